#include "s2flow/kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

#include "s2flow/errors.hpp"

namespace s2flow::kernels {

namespace detail {

void cay_apply_field_scalar(ConstView3, ConstView3, View3, std::size_t);
void exp_apply_field_scalar(ConstView3, ConstView3, View3, std::size_t);
void project_orthogonal_scalar(ConstView3, ConstView3, View3, std::size_t);
void isotropy_shift_scalar(ConstView3, const double*, ConstView3, View3, std::size_t);
void isotropy_shift_const_scalar(ConstView3, double, ConstView3, View3, std::size_t);
void dcay_inv_field_scalar(ConstView3, ConstView3, View3, std::size_t);
void chain_field_scalar(ConstView3, const ChainFieldCoeffs&, View3, std::size_t);
void llg_generator_scalar(ConstView3, ConstView3, double, bool, View3, std::size_t);

#if defined(__x86_64__) || defined(__i386__)
void cay_apply_field_avx2(ConstView3, ConstView3, View3, std::size_t);
void project_orthogonal_avx2(ConstView3, ConstView3, View3, std::size_t);
void isotropy_shift_avx2(ConstView3, const double*, ConstView3, View3, std::size_t);
void isotropy_shift_const_avx2(ConstView3, double, ConstView3, View3, std::size_t);
void dcay_inv_field_avx2(ConstView3, ConstView3, View3, std::size_t);
void chain_field_avx2(ConstView3, const ChainFieldCoeffs&, View3, std::size_t);
void llg_generator_avx2(ConstView3, ConstView3, double, bool, View3, std::size_t);
#endif
#if defined(__aarch64__)
void cay_apply_field_neon(ConstView3, ConstView3, View3, std::size_t);
void project_orthogonal_neon(ConstView3, ConstView3, View3, std::size_t);
void isotropy_shift_neon(ConstView3, const double*, ConstView3, View3, std::size_t);
void isotropy_shift_const_neon(ConstView3, double, ConstView3, View3, std::size_t);
void dcay_inv_field_neon(ConstView3, ConstView3, View3, std::size_t);
void chain_field_neon(ConstView3, const ChainFieldCoeffs&, View3, std::size_t);
void llg_generator_neon(ConstView3, ConstView3, double, bool, View3, std::size_t);
#endif

}  // namespace detail

namespace {

struct Table {
    void (*cay)(ConstView3, ConstView3, View3, std::size_t);
    void (*exp)(ConstView3, ConstView3, View3, std::size_t);
    void (*project)(ConstView3, ConstView3, View3, std::size_t);
    void (*shift)(ConstView3, const double*, ConstView3, View3, std::size_t);
    void (*shift_const)(ConstView3, double, ConstView3, View3, std::size_t);
    void (*dcay_inv)(ConstView3, ConstView3, View3, std::size_t);
    void (*chain)(ConstView3, const ChainFieldCoeffs&, View3, std::size_t);
    void (*llg_gen)(ConstView3, ConstView3, double, bool, View3, std::size_t);
};

constexpr Table kScalar = {
    detail::cay_apply_field_scalar,  detail::exp_apply_field_scalar,
    detail::project_orthogonal_scalar, detail::isotropy_shift_scalar,
    detail::isotropy_shift_const_scalar, detail::dcay_inv_field_scalar,
    detail::chain_field_scalar, detail::llg_generator_scalar,
};

#if defined(__x86_64__) || defined(__i386__)
constexpr Table kAvx2 = {
    detail::cay_apply_field_avx2,  detail::exp_apply_field_scalar,
    detail::project_orthogonal_avx2, detail::isotropy_shift_avx2,
    detail::isotropy_shift_const_avx2, detail::dcay_inv_field_avx2,
    detail::chain_field_avx2, detail::llg_generator_avx2,
};
#endif
#if defined(__aarch64__)
constexpr Table kNeon = {
    detail::cay_apply_field_neon,  detail::exp_apply_field_scalar,
    detail::project_orthogonal_neon, detail::isotropy_shift_neon,
    detail::isotropy_shift_const_neon, detail::dcay_inv_field_neon,
    detail::chain_field_neon, detail::llg_generator_neon,
};
#endif

const Table* table_for(Backend b) {
    switch (b) {
        case Backend::scalar: return &kScalar;
#if defined(__x86_64__) || defined(__i386__)
        case Backend::avx2: return &kAvx2;
#endif
#if defined(__aarch64__)
        case Backend::neon: return &kNeon;
#endif
        default: return nullptr;
    }
}

Backend g_backend = []() {
    if (const char* env = std::getenv("S2FLOW_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::avx2))
            return Backend::avx2;
        if (std::strcmp(env, "neon") == 0 && backend_available(Backend::neon))
            return Backend::neon;
        return Backend::scalar;  // unknown or unavailable: play safe
    }
    return detect_backend();
}();

const Table* g_table = table_for(g_backend);

}  // namespace

bool backend_available(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(__i386__)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend detect_backend() {
#if defined(__x86_64__) || defined(__i386__)
    if (backend_available(Backend::avx2)) return Backend::avx2;
#endif
#if defined(__aarch64__)
    return Backend::neon;
#endif
    return Backend::scalar;
}

Backend active_backend() { return g_backend; }

void set_backend(Backend b) {
    if (!backend_available(b))
        throw config_error(std::string("kernel backend unavailable on this machine: ") +
                           backend_name(b));
    g_backend = b;
    g_table = table_for(b);
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

void cay_apply_field(ConstView3 f, ConstView3 m, View3 out, std::size_t n) {
    g_table->cay(f, m, out, n);
}
void exp_apply_field(ConstView3 f, ConstView3 m, View3 out, std::size_t n) {
    g_table->exp(f, m, out, n);
}
void project_orthogonal(ConstView3 a, ConstView3 m, View3 out, std::size_t n) {
    g_table->project(a, m, out, n);
}
void isotropy_shift(ConstView3 a, const double* sigma, ConstView3 m, View3 out, std::size_t n) {
    g_table->shift(a, sigma, m, out, n);
}
void isotropy_shift_const(ConstView3 a, double sigma, ConstView3 m, View3 out, std::size_t n) {
    g_table->shift_const(a, sigma, m, out, n);
}
void dcay_inv_field(ConstView3 f, ConstView3 v, View3 out, std::size_t n) {
    g_table->dcay_inv(f, v, out, n);
}
void chain_field(ConstView3 m, const ChainFieldCoeffs& c, View3 out, std::size_t n) {
    g_table->chain(m, c, out, n);
}
void llg_generator(ConstView3 m, ConstView3 h, double lambda, bool precession,
                   View3 out, std::size_t n) {
    g_table->llg_gen(m, h, lambda, precession, out, n);
}

}  // namespace s2flow::kernels
