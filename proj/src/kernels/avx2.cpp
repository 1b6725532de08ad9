#include "s2flow/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include "site_ops.hpp"

// AVX2 variants, 4 sites per iteration, scalar tail. Arithmetic mirrors
// site_ops.hpp operation for operation: mul/add/sub/div only, no FMA, so
// every lane rounds exactly like the scalar reference.

#define S2F_AVX2 __attribute__((target("avx2")))

namespace s2flow::kernels::detail {

S2F_AVX2 static inline void cross4(__m256d ax, __m256d ay, __m256d az,
                                   __m256d bx, __m256d by, __m256d bz,
                                   __m256d& cx, __m256d& cy, __m256d& cz) {
    cx = _mm256_sub_pd(_mm256_mul_pd(ay, bz), _mm256_mul_pd(az, by));
    cy = _mm256_sub_pd(_mm256_mul_pd(az, bx), _mm256_mul_pd(ax, bz));
    cz = _mm256_sub_pd(_mm256_mul_pd(ax, by), _mm256_mul_pd(ay, bx));
}

S2F_AVX2 void cay_apply_field_avx2(ConstView3 f, ConstView3 m, View3 out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d quarter = _mm256_set1_pd(0.25);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d fx = _mm256_loadu_pd(f.x + i);
        const __m256d fy = _mm256_loadu_pd(f.y + i);
        const __m256d fz = _mm256_loadu_pd(f.z + i);
        const __m256d mx = _mm256_loadu_pd(m.x + i);
        const __m256d my = _mm256_loadu_pd(m.y + i);
        const __m256d mz = _mm256_loadu_pd(m.z + i);
        __m256d c1x, c1y, c1z, c2x, c2y, c2z;
        cross4(fx, fy, fz, mx, my, mz, c1x, c1y, c1z);
        cross4(fx, fy, fz, c1x, c1y, c1z, c2x, c2y, c2z);
        const __m256d q = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(fx, fx), _mm256_mul_pd(fy, fy)),
            _mm256_mul_pd(fz, fz));
        const __m256d s = _mm256_div_pd(one, _mm256_add_pd(one, _mm256_mul_pd(quarter, q)));
        _mm256_storeu_pd(out.x + i,
            _mm256_add_pd(mx, _mm256_mul_pd(s, _mm256_add_pd(c1x, _mm256_mul_pd(half, c2x)))));
        _mm256_storeu_pd(out.y + i,
            _mm256_add_pd(my, _mm256_mul_pd(s, _mm256_add_pd(c1y, _mm256_mul_pd(half, c2y)))));
        _mm256_storeu_pd(out.z + i,
            _mm256_add_pd(mz, _mm256_mul_pd(s, _mm256_add_pd(c1z, _mm256_mul_pd(half, c2z)))));
    }
    for (; i < n; ++i) cay_site(f, m, out, i);
}

S2F_AVX2 void project_orthogonal_avx2(ConstView3 a, ConstView3 m, View3 out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ax = _mm256_loadu_pd(a.x + i);
        const __m256d ay = _mm256_loadu_pd(a.y + i);
        const __m256d az = _mm256_loadu_pd(a.z + i);
        const __m256d mx = _mm256_loadu_pd(m.x + i);
        const __m256d my = _mm256_loadu_pd(m.y + i);
        const __m256d mz = _mm256_loadu_pd(m.z + i);
        const __m256d d = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(mx, ax), _mm256_mul_pd(my, ay)),
            _mm256_mul_pd(mz, az));
        _mm256_storeu_pd(out.x + i, _mm256_sub_pd(ax, _mm256_mul_pd(d, mx)));
        _mm256_storeu_pd(out.y + i, _mm256_sub_pd(ay, _mm256_mul_pd(d, my)));
        _mm256_storeu_pd(out.z + i, _mm256_sub_pd(az, _mm256_mul_pd(d, mz)));
    }
    for (; i < n; ++i) project_site(a, m, out, i);
}

S2F_AVX2 static inline void shift4(ConstView3 a, __m256d sg, ConstView3 m, View3 out,
                                   std::size_t i) {
    const __m256d ax = _mm256_loadu_pd(a.x + i);
    const __m256d ay = _mm256_loadu_pd(a.y + i);
    const __m256d az = _mm256_loadu_pd(a.z + i);
    const __m256d mx = _mm256_loadu_pd(m.x + i);
    const __m256d my = _mm256_loadu_pd(m.y + i);
    const __m256d mz = _mm256_loadu_pd(m.z + i);
    _mm256_storeu_pd(out.x + i, _mm256_add_pd(ax, _mm256_mul_pd(sg, mx)));
    _mm256_storeu_pd(out.y + i, _mm256_add_pd(ay, _mm256_mul_pd(sg, my)));
    _mm256_storeu_pd(out.z + i, _mm256_add_pd(az, _mm256_mul_pd(sg, mz)));
}

S2F_AVX2 void isotropy_shift_avx2(ConstView3 a, const double* sigma, ConstView3 m, View3 out,
                                  std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) shift4(a, _mm256_loadu_pd(sigma + i), m, out, i);
    for (; i < n; ++i) shift_site(a, sigma[i], m, out, i);
}

S2F_AVX2 void isotropy_shift_const_avx2(ConstView3 a, double sigma, ConstView3 m, View3 out,
                                        std::size_t n) {
    const __m256d sg = _mm256_set1_pd(sigma);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) shift4(a, sg, m, out, i);
    for (; i < n; ++i) shift_site(a, sigma, m, out, i);
}

S2F_AVX2 void dcay_inv_field_avx2(ConstView3 f, ConstView3 v, View3 out, std::size_t n) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d quarter = _mm256_set1_pd(0.25);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d fx = _mm256_loadu_pd(f.x + i);
        const __m256d fy = _mm256_loadu_pd(f.y + i);
        const __m256d fz = _mm256_loadu_pd(f.z + i);
        const __m256d vx = _mm256_loadu_pd(v.x + i);
        const __m256d vy = _mm256_loadu_pd(v.y + i);
        const __m256d vz = _mm256_loadu_pd(v.z + i);
        __m256d c1x, c1y, c1z;
        cross4(fx, fy, fz, vx, vy, vz, c1x, c1y, c1z);
        const __m256d d = _mm256_mul_pd(quarter, _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(fx, vx), _mm256_mul_pd(fy, vy)),
            _mm256_mul_pd(fz, vz)));
        _mm256_storeu_pd(out.x + i,
            _mm256_add_pd(_mm256_sub_pd(vx, _mm256_mul_pd(half, c1x)), _mm256_mul_pd(d, fx)));
        _mm256_storeu_pd(out.y + i,
            _mm256_add_pd(_mm256_sub_pd(vy, _mm256_mul_pd(half, c1y)), _mm256_mul_pd(d, fy)));
        _mm256_storeu_pd(out.z + i,
            _mm256_add_pd(_mm256_sub_pd(vz, _mm256_mul_pd(half, c1z)), _mm256_mul_pd(d, fz)));
    }
    for (; i < n; ++i) dcay_inv_site(f, v, out, i);
}

S2F_AVX2 void chain_field_avx2(ConstView3 m, const ChainFieldCoeffs& c, View3 out,
                               std::size_t n) {
    chain_field_site(m, c, out, 0, n);
    const __m256d cex = _mm256_set1_pd(c.cex);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d mu0 = _mm256_set1_pd(c.mu0);
    const __m256d kan = _mm256_set1_pd(c.kan);
    const __m256d ex = _mm256_set1_pd(c.e.x);
    const __m256d ey = _mm256_set1_pd(c.e.y);
    const __m256d ez = _mm256_set1_pd(c.e.z);
    const __m256d hax = _mm256_set1_pd(c.h_app.x);
    const __m256d hay = _mm256_set1_pd(c.h_app.y);
    const __m256d haz = _mm256_set1_pd(c.h_app.z);
    std::size_t i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        const __m256d x0 = _mm256_loadu_pd(m.x + i);
        const __m256d y0 = _mm256_loadu_pd(m.y + i);
        const __m256d z0 = _mm256_loadu_pd(m.z + i);
        const __m256d xl = _mm256_loadu_pd(m.x + i - 1);
        const __m256d yl = _mm256_loadu_pd(m.y + i - 1);
        const __m256d zl = _mm256_loadu_pd(m.z + i - 1);
        const __m256d xr = _mm256_loadu_pd(m.x + i + 1);
        const __m256d yr = _mm256_loadu_pd(m.y + i + 1);
        const __m256d zr = _mm256_loadu_pd(m.z + i + 1);
        const __m256d exx = _mm256_mul_pd(cex,
            _mm256_sub_pd(_mm256_add_pd(xl, xr), _mm256_mul_pd(two, x0)));
        const __m256d exy = _mm256_mul_pd(cex,
            _mm256_sub_pd(_mm256_add_pd(yl, yr), _mm256_mul_pd(two, y0)));
        const __m256d exz = _mm256_mul_pd(cex,
            _mm256_sub_pd(_mm256_add_pd(zl, zr), _mm256_mul_pd(two, z0)));
        const __m256d mde = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(x0, ex), _mm256_mul_pd(y0, ey)),
            _mm256_mul_pd(z0, ez));
        const __m256d km = _mm256_mul_pd(kan, mde);
        _mm256_storeu_pd(out.x + i, _mm256_add_pd(
            _mm256_add_pd(exx, _mm256_mul_pd(mu0, _mm256_sub_pd(hax, x0))),
            _mm256_mul_pd(km, ex)));
        _mm256_storeu_pd(out.y + i, _mm256_add_pd(
            _mm256_add_pd(exy, _mm256_mul_pd(mu0, hay)),
            _mm256_mul_pd(km, ey)));
        _mm256_storeu_pd(out.z + i, _mm256_add_pd(
            _mm256_add_pd(exz, _mm256_mul_pd(mu0, haz)),
            _mm256_mul_pd(km, ez)));
    }
    for (; i < n - 1; ++i) chain_field_site(m, c, out, i, n);
    chain_field_site(m, c, out, n - 1, n);
}

S2F_AVX2 void llg_generator_avx2(ConstView3 m, ConstView3 h, double lambda, bool precession,
                                 View3 out, std::size_t n) {
    const __m256d lam = _mm256_set1_pd(lambda);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d mx = _mm256_loadu_pd(m.x + i);
        const __m256d my = _mm256_loadu_pd(m.y + i);
        const __m256d mz = _mm256_loadu_pd(m.z + i);
        const __m256d hx = _mm256_loadu_pd(h.x + i);
        const __m256d hy = _mm256_loadu_pd(h.y + i);
        const __m256d hz = _mm256_loadu_pd(h.z + i);
        __m256d cx, cy, cz;
        if (precession) {
            cross4(hx, hy, hz, mx, my, mz, cx, cy, cz);
            _mm256_storeu_pd(out.x + i, _mm256_sub_pd(hx, _mm256_mul_pd(lam, cx)));
            _mm256_storeu_pd(out.y + i, _mm256_sub_pd(hy, _mm256_mul_pd(lam, cy)));
            _mm256_storeu_pd(out.z + i, _mm256_sub_pd(hz, _mm256_mul_pd(lam, cz)));
        } else {
            cross4(mx, my, mz, hx, hy, hz, cx, cy, cz);
            _mm256_storeu_pd(out.x + i, _mm256_mul_pd(lam, cx));
            _mm256_storeu_pd(out.y + i, _mm256_mul_pd(lam, cy));
            _mm256_storeu_pd(out.z + i, _mm256_mul_pd(lam, cz));
        }
    }
    for (; i < n; ++i) llg_generator_site(m, h, lambda, precession, out, i);
}

}  // namespace s2flow::kernels::detail

#endif  // x86
