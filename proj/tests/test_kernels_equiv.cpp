#include <doctest.h>

#include <cstddef>
#include <vector>

#include "s2flow/errors.hpp"
#include "s2flow/field.hpp"
#include "s2flow/kernels/kernels.hpp"
#include "s2flow/rng.hpp"

// Every kernel must produce bit-identical output on every available backend.
// Exact double equality below is deliberate.

using namespace s2flow;
namespace k = s2flow::kernels;

namespace {

struct BackendGuard {
    k::Backend saved = k::active_backend();
    ~BackendGuard() { k::set_backend(saved); }
};

k::ConstView3 view(const SphereField& f) { return {f.x.data(), f.y.data(), f.z.data()}; }
k::ConstView3 view(const GeneratorField& f) { return {f.x.data(), f.y.data(), f.z.data()}; }
k::View3 mut_view(GeneratorField& f) { return {f.x.data(), f.y.data(), f.z.data()}; }

SphereField random_state(std::size_t n, std::uint64_t seed) {
    SphereField m(n);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) m.set(i, rng.unit_vector());
    return m;
}

GeneratorField random_gen(std::size_t n, std::uint64_t seed, double amp = 2.5) {
    GeneratorField a(n);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) a.set(i, rng.uniform(0.0, amp) * rng.unit_vector());
    return a;
}

void check_identical(const GeneratorField& a, const GeneratorField& b) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.x[i] == b.x[i]);
        CHECK(a.y[i] == b.y[i]);
        CHECK(a.z[i] == b.z[i]);
    }
}

std::vector<k::Backend> simd_backends() {
    std::vector<k::Backend> v;
    if (k::backend_available(k::Backend::avx2)) v.push_back(k::Backend::avx2);
    if (k::backend_available(k::Backend::neon)) v.push_back(k::Backend::neon);
    return v;
}

const std::size_t kSizes[] = {2, 3, 4, 5, 7, 8, 9, 16, 31, 100, 101};

template <class Fn>
void for_each_case(Fn&& fn) {
    for (k::Backend b : simd_backends())
        for (std::size_t n : kSizes) fn(b, n);
}

GeneratorField run_kernel_case(k::Backend b, std::size_t n, int which, std::uint64_t seed) {
    BackendGuard guard;
    k::set_backend(b);
    const SphereField m = random_state(n, seed);
    const GeneratorField a = random_gen(n, seed + 1);
    std::vector<double> sigma(n);
    Rng rng(seed + 2);
    for (auto& s : sigma) s = rng.uniform(-3.0, 3.0);
    const k::ChainFieldCoeffs coeffs{rng.uniform(0.5, 2.0),
                                     rng.uniform(0.5, 2.0),
                                     rng.uniform(0.5, 2.0),
                                     rng.unit_vector(),
                                     rng.uniform(0.0, 2.0) * rng.unit_vector()};
    GeneratorField out(n);
    switch (which) {
        case 0: k::cay_apply_field(view(a), view(m), mut_view(out), n); break;
        case 1: k::exp_apply_field(view(a), view(m), mut_view(out), n); break;
        case 2: k::project_orthogonal(view(a), view(m), mut_view(out), n); break;
        case 3: k::isotropy_shift(view(a), sigma.data(), view(m), mut_view(out), n); break;
        case 4: k::isotropy_shift_const(view(a), sigma[0], view(m), mut_view(out), n); break;
        case 5: k::dcay_inv_field(view(a), view(a), mut_view(out), n); break;
        case 6: k::chain_field(view(m), coeffs, mut_view(out), n); break;
        case 7: k::llg_generator(view(m), view(a), 0.37, true, mut_view(out), n); break;
        case 8: k::llg_generator(view(m), view(a), 1.8, false, mut_view(out), n); break;
    }
    return out;
}

}  // namespace

TEST_CASE("every kernel is bit-identical across backends") {
    if (simd_backends().empty()) {
        WARN("no SIMD backend on this machine, scalar only");
        return;
    }
    for (int which = 0; which <= 8; ++which) {
        for_each_case([&](k::Backend b, std::size_t n) {
            const std::uint64_t seed = 1000 + 17 * static_cast<std::uint64_t>(which) + n;
            const GeneratorField ref = run_kernel_case(k::Backend::scalar, n, which, seed);
            const GeneratorField got = run_kernel_case(b, n, which, seed);
            check_identical(ref, got);
        });
    }
}

TEST_CASE("backend selection is explicit and checked") {
    CHECK(k::backend_available(k::Backend::scalar));
    BackendGuard guard;
    k::set_backend(k::Backend::scalar);
    CHECK(k::active_backend() == k::Backend::scalar);
    for (k::Backend b : {k::Backend::avx2, k::Backend::neon}) {
        if (k::backend_available(b)) {
            k::set_backend(b);
            CHECK(k::active_backend() == b);
        } else {
            CHECK_THROWS_AS(k::set_backend(b), config_error);
        }
    }
    CHECK(k::backend_name(k::Backend::scalar) == std::string("scalar"));
    CHECK(k::backend_name(k::Backend::avx2) == std::string("avx2"));
    CHECK(k::backend_name(k::Backend::neon) == std::string("neon"));
}

TEST_CASE("detect_backend picks something available") {
    CHECK(k::backend_available(k::detect_backend()));
}
