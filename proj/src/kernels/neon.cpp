#include "s2flow/kernels/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include "site_ops.hpp"

// NEON variants, 2 sites per iteration. Same operation order as the scalar
// reference (vmul/vadd/vsub/vdiv only, no vfma), so lanes round identically.

namespace s2flow::kernels::detail {

static inline void cross2(float64x2_t ax, float64x2_t ay, float64x2_t az,
                          float64x2_t bx, float64x2_t by, float64x2_t bz,
                          float64x2_t& cx, float64x2_t& cy, float64x2_t& cz) {
    cx = vsubq_f64(vmulq_f64(ay, bz), vmulq_f64(az, by));
    cy = vsubq_f64(vmulq_f64(az, bx), vmulq_f64(ax, bz));
    cz = vsubq_f64(vmulq_f64(ax, by), vmulq_f64(ay, bx));
}

void cay_apply_field_neon(ConstView3 f, ConstView3 m, View3 out, std::size_t n) {
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t half = vdupq_n_f64(0.5);
    const float64x2_t quarter = vdupq_n_f64(0.25);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t fx = vld1q_f64(f.x + i);
        const float64x2_t fy = vld1q_f64(f.y + i);
        const float64x2_t fz = vld1q_f64(f.z + i);
        const float64x2_t mx = vld1q_f64(m.x + i);
        const float64x2_t my = vld1q_f64(m.y + i);
        const float64x2_t mz = vld1q_f64(m.z + i);
        float64x2_t c1x, c1y, c1z, c2x, c2y, c2z;
        cross2(fx, fy, fz, mx, my, mz, c1x, c1y, c1z);
        cross2(fx, fy, fz, c1x, c1y, c1z, c2x, c2y, c2z);
        const float64x2_t q = vaddq_f64(
            vaddq_f64(vmulq_f64(fx, fx), vmulq_f64(fy, fy)), vmulq_f64(fz, fz));
        const float64x2_t s = vdivq_f64(one, vaddq_f64(one, vmulq_f64(quarter, q)));
        vst1q_f64(out.x + i, vaddq_f64(mx, vmulq_f64(s, vaddq_f64(c1x, vmulq_f64(half, c2x)))));
        vst1q_f64(out.y + i, vaddq_f64(my, vmulq_f64(s, vaddq_f64(c1y, vmulq_f64(half, c2y)))));
        vst1q_f64(out.z + i, vaddq_f64(mz, vmulq_f64(s, vaddq_f64(c1z, vmulq_f64(half, c2z)))));
    }
    for (; i < n; ++i) cay_site(f, m, out, i);
}

void project_orthogonal_neon(ConstView3 a, ConstView3 m, View3 out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t ax = vld1q_f64(a.x + i);
        const float64x2_t ay = vld1q_f64(a.y + i);
        const float64x2_t az = vld1q_f64(a.z + i);
        const float64x2_t mx = vld1q_f64(m.x + i);
        const float64x2_t my = vld1q_f64(m.y + i);
        const float64x2_t mz = vld1q_f64(m.z + i);
        const float64x2_t d = vaddq_f64(
            vaddq_f64(vmulq_f64(mx, ax), vmulq_f64(my, ay)), vmulq_f64(mz, az));
        vst1q_f64(out.x + i, vsubq_f64(ax, vmulq_f64(d, mx)));
        vst1q_f64(out.y + i, vsubq_f64(ay, vmulq_f64(d, my)));
        vst1q_f64(out.z + i, vsubq_f64(az, vmulq_f64(d, mz)));
    }
    for (; i < n; ++i) project_site(a, m, out, i);
}

static inline void shift2(ConstView3 a, float64x2_t sg, ConstView3 m, View3 out,
                          std::size_t i) {
    vst1q_f64(out.x + i, vaddq_f64(vld1q_f64(a.x + i), vmulq_f64(sg, vld1q_f64(m.x + i))));
    vst1q_f64(out.y + i, vaddq_f64(vld1q_f64(a.y + i), vmulq_f64(sg, vld1q_f64(m.y + i))));
    vst1q_f64(out.z + i, vaddq_f64(vld1q_f64(a.z + i), vmulq_f64(sg, vld1q_f64(m.z + i))));
}

void isotropy_shift_neon(ConstView3 a, const double* sigma, ConstView3 m, View3 out,
                         std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) shift2(a, vld1q_f64(sigma + i), m, out, i);
    for (; i < n; ++i) shift_site(a, sigma[i], m, out, i);
}

void isotropy_shift_const_neon(ConstView3 a, double sigma, ConstView3 m, View3 out,
                               std::size_t n) {
    const float64x2_t sg = vdupq_n_f64(sigma);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) shift2(a, sg, m, out, i);
    for (; i < n; ++i) shift_site(a, sigma, m, out, i);
}

void dcay_inv_field_neon(ConstView3 f, ConstView3 v, View3 out, std::size_t n) {
    const float64x2_t half = vdupq_n_f64(0.5);
    const float64x2_t quarter = vdupq_n_f64(0.25);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t fx = vld1q_f64(f.x + i);
        const float64x2_t fy = vld1q_f64(f.y + i);
        const float64x2_t fz = vld1q_f64(f.z + i);
        const float64x2_t vx = vld1q_f64(v.x + i);
        const float64x2_t vy = vld1q_f64(v.y + i);
        const float64x2_t vz = vld1q_f64(v.z + i);
        float64x2_t c1x, c1y, c1z;
        cross2(fx, fy, fz, vx, vy, vz, c1x, c1y, c1z);
        const float64x2_t d = vmulq_f64(quarter, vaddq_f64(
            vaddq_f64(vmulq_f64(fx, vx), vmulq_f64(fy, vy)), vmulq_f64(fz, vz)));
        vst1q_f64(out.x + i, vaddq_f64(vsubq_f64(vx, vmulq_f64(half, c1x)), vmulq_f64(d, fx)));
        vst1q_f64(out.y + i, vaddq_f64(vsubq_f64(vy, vmulq_f64(half, c1y)), vmulq_f64(d, fy)));
        vst1q_f64(out.z + i, vaddq_f64(vsubq_f64(vz, vmulq_f64(half, c1z)), vmulq_f64(d, fz)));
    }
    for (; i < n; ++i) dcay_inv_site(f, v, out, i);
}

void chain_field_neon(ConstView3 m, const ChainFieldCoeffs& c, View3 out, std::size_t n) {
    chain_field_site(m, c, out, 0, n);
    const float64x2_t cex = vdupq_n_f64(c.cex);
    const float64x2_t two = vdupq_n_f64(2.0);
    const float64x2_t mu0 = vdupq_n_f64(c.mu0);
    const float64x2_t kan = vdupq_n_f64(c.kan);
    const float64x2_t ex = vdupq_n_f64(c.e.x);
    const float64x2_t ey = vdupq_n_f64(c.e.y);
    const float64x2_t ez = vdupq_n_f64(c.e.z);
    const float64x2_t hax = vdupq_n_f64(c.h_app.x);
    const float64x2_t hay = vdupq_n_f64(c.h_app.y);
    const float64x2_t haz = vdupq_n_f64(c.h_app.z);
    std::size_t i = 1;
    for (; i + 2 <= n - 1; i += 2) {
        const float64x2_t x0 = vld1q_f64(m.x + i);
        const float64x2_t y0 = vld1q_f64(m.y + i);
        const float64x2_t z0 = vld1q_f64(m.z + i);
        const float64x2_t xl = vld1q_f64(m.x + i - 1);
        const float64x2_t yl = vld1q_f64(m.y + i - 1);
        const float64x2_t zl = vld1q_f64(m.z + i - 1);
        const float64x2_t xr = vld1q_f64(m.x + i + 1);
        const float64x2_t yr = vld1q_f64(m.y + i + 1);
        const float64x2_t zr = vld1q_f64(m.z + i + 1);
        const float64x2_t exx = vmulq_f64(cex, vsubq_f64(vaddq_f64(xl, xr), vmulq_f64(two, x0)));
        const float64x2_t exy = vmulq_f64(cex, vsubq_f64(vaddq_f64(yl, yr), vmulq_f64(two, y0)));
        const float64x2_t exz = vmulq_f64(cex, vsubq_f64(vaddq_f64(zl, zr), vmulq_f64(two, z0)));
        const float64x2_t mde = vaddq_f64(
            vaddq_f64(vmulq_f64(x0, ex), vmulq_f64(y0, ey)), vmulq_f64(z0, ez));
        const float64x2_t km = vmulq_f64(kan, mde);
        vst1q_f64(out.x + i, vaddq_f64(
            vaddq_f64(exx, vmulq_f64(mu0, vsubq_f64(hax, x0))), vmulq_f64(km, ex)));
        vst1q_f64(out.y + i, vaddq_f64(
            vaddq_f64(exy, vmulq_f64(mu0, hay)), vmulq_f64(km, ey)));
        vst1q_f64(out.z + i, vaddq_f64(
            vaddq_f64(exz, vmulq_f64(mu0, haz)), vmulq_f64(km, ez)));
    }
    for (; i < n - 1; ++i) chain_field_site(m, c, out, i, n);
    chain_field_site(m, c, out, n - 1, n);
}

void llg_generator_neon(ConstView3 m, ConstView3 h, double lambda, bool precession,
                        View3 out, std::size_t n) {
    const float64x2_t lam = vdupq_n_f64(lambda);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t mx = vld1q_f64(m.x + i);
        const float64x2_t my = vld1q_f64(m.y + i);
        const float64x2_t mz = vld1q_f64(m.z + i);
        const float64x2_t hx = vld1q_f64(h.x + i);
        const float64x2_t hy = vld1q_f64(h.y + i);
        const float64x2_t hz = vld1q_f64(h.z + i);
        float64x2_t cx, cy, cz;
        if (precession) {
            cross2(hx, hy, hz, mx, my, mz, cx, cy, cz);
            vst1q_f64(out.x + i, vsubq_f64(hx, vmulq_f64(lam, cx)));
            vst1q_f64(out.y + i, vsubq_f64(hy, vmulq_f64(lam, cy)));
            vst1q_f64(out.z + i, vsubq_f64(hz, vmulq_f64(lam, cz)));
        } else {
            cross2(mx, my, mz, hx, hy, hz, cx, cy, cz);
            vst1q_f64(out.x + i, vmulq_f64(lam, cx));
            vst1q_f64(out.y + i, vmulq_f64(lam, cy));
            vst1q_f64(out.z + i, vmulq_f64(lam, cz));
        }
    }
    for (; i < n; ++i) llg_generator_site(m, h, lambda, precession, out, i);
}

}  // namespace s2flow::kernels::detail

#endif  // aarch64
