#pragma once

// Single-site bodies shared by the scalar kernels and the SIMD tail loops.
// The SIMD kernels mirror these expression trees operation for operation;
// any change here must be replicated there to keep backends bit-identical.

#include "s2flow/kernels/kernels.hpp"
#include "s2flow/so3.hpp"

namespace s2flow::kernels::detail {

inline void cay_site(ConstView3 f, ConstView3 m, View3 out, std::size_t i) {
    const Vec3 r = cay_apply({f.x[i], f.y[i], f.z[i]}, {m.x[i], m.y[i], m.z[i]});
    out.x[i] = r.x; out.y[i] = r.y; out.z[i] = r.z;
}

inline void exp_site(ConstView3 f, ConstView3 m, View3 out, std::size_t i) {
    const Vec3 r = exp_apply({f.x[i], f.y[i], f.z[i]}, {m.x[i], m.y[i], m.z[i]});
    out.x[i] = r.x; out.y[i] = r.y; out.z[i] = r.z;
}

inline void project_site(ConstView3 a, ConstView3 m, View3 out, std::size_t i) {
    const double d = (m.x[i] * a.x[i] + m.y[i] * a.y[i]) + m.z[i] * a.z[i];
    out.x[i] = a.x[i] - d * m.x[i];
    out.y[i] = a.y[i] - d * m.y[i];
    out.z[i] = a.z[i] - d * m.z[i];
}

inline void shift_site(ConstView3 a, double sg, ConstView3 m, View3 out, std::size_t i) {
    out.x[i] = a.x[i] + sg * m.x[i];
    out.y[i] = a.y[i] + sg * m.y[i];
    out.z[i] = a.z[i] + sg * m.z[i];
}

inline void dcay_inv_site(ConstView3 f, ConstView3 v, View3 out, std::size_t i) {
    const Vec3 r = dcay_inv_apply({f.x[i], f.y[i], f.z[i]}, {v.x[i], v.y[i], v.z[i]});
    out.x[i] = r.x; out.y[i] = r.y; out.z[i] = r.z;
}

inline void chain_field_site(ConstView3 m, const ChainFieldCoeffs& c, View3 out,
                             std::size_t i, std::size_t n) {
    const std::size_t il = (i == 0) ? 1 : i - 1;      // mirror ghosts
    const std::size_t ir = (i == n - 1) ? n - 2 : i + 1;
    const double x0 = m.x[i], y0 = m.y[i], z0 = m.z[i];
    const double exx = c.cex * ((m.x[il] + m.x[ir]) - 2.0 * x0);
    const double exy = c.cex * ((m.y[il] + m.y[ir]) - 2.0 * y0);
    const double exz = c.cex * ((m.z[il] + m.z[ir]) - 2.0 * z0);
    const double mde = (x0 * c.e.x + y0 * c.e.y) + z0 * c.e.z;
    out.x[i] = exx + c.mu0 * (c.h_app.x - x0) + (c.kan * mde) * c.e.x;
    out.y[i] = exy + c.mu0 * c.h_app.y + (c.kan * mde) * c.e.y;
    out.z[i] = exz + c.mu0 * c.h_app.z + (c.kan * mde) * c.e.z;
}

inline void llg_generator_site(ConstView3 m, ConstView3 h, double lambda, bool precession,
                               View3 out, std::size_t i) {
    const double mx = m.x[i], my = m.y[i], mz = m.z[i];
    const double hx = h.x[i], hy = h.y[i], hz = h.z[i];
    if (precession) {
        const double cx = hy * mz - hz * my;
        const double cy = hz * mx - hx * mz;
        const double cz = hx * my - hy * mx;
        out.x[i] = hx - lambda * cx;
        out.y[i] = hy - lambda * cy;
        out.z[i] = hz - lambda * cz;
    } else {
        const double cx = my * hz - mz * hy;
        const double cy = mz * hx - mx * hz;
        const double cz = mx * hy - my * hx;
        out.x[i] = lambda * cx;
        out.y[i] = lambda * cy;
        out.z[i] = lambda * cz;
    }
}

}  // namespace s2flow::kernels::detail
