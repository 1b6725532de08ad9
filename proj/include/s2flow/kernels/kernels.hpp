#pragma once

// Per-site compute kernels over structure-of-arrays data. Every kernel has a
// scalar reference implementation plus optional AVX2/NEON variants selected
// at runtime. The SIMD variants perform the same IEEE operations in the same
// order per site as the scalar code (no FMA, no reassociation), so results
// are bit-identical across backends; the equivalence tests assert that.

#include <cstddef>

#include "s2flow/vec3.hpp"

namespace s2flow::kernels {

enum class Backend { scalar, avx2, neon };

Backend active_backend();
void set_backend(Backend b);         // throws config_error if unavailable
bool backend_available(Backend b);
const char* backend_name(Backend b);
// Resolve "auto"/env override S2FLOW_KERNELS at first use.
Backend detect_backend();

struct ConstView3 {
    const double* x;
    const double* y;
    const double* z;
};
struct View3 {
    double* x;
    double* y;
    double* z;
};

// Coefficients of the effective field of a 1-d spin chain:
//   h_i = cex * (m_{i-1} + m_{i+1} - 2 m_i)            (mirror ghosts at the ends)
//       + mu0 * (h_app - m_i.x * ex)                   (applied + slab stray field)
//       + kan * <m_i, e> e
struct ChainFieldCoeffs {
    double cex;   // exchange_coeff / h^2
    double mu0;
    double kan;
    Vec3 e;       // easy axis, unit
    Vec3 h_app;
};

// Purely per-site kernels (project, shift, dcay_inv, llg_generator) tolerate
// out aliasing an input; cay/exp/chain_field do not (chain_field reads
// neighbor sites, cay/exp read m after partial writes would clobber it).

// out_i = cay(f_i) m_i. out must not alias f or m.
void cay_apply_field(ConstView3 f, ConstView3 m, View3 out, std::size_t n);
// out_i = exp(f_i) m_i (scalar on every backend; libm trig stays off the SIMD path).
void exp_apply_field(ConstView3 f, ConstView3 m, View3 out, std::size_t n);
// out_i = a_i - <m_i, a_i> m_i
void project_orthogonal(ConstView3 a, ConstView3 m, View3 out, std::size_t n);
// out_i = a_i + sigma_i m_i
void isotropy_shift(ConstView3 a, const double* sigma, ConstView3 m, View3 out, std::size_t n);
void isotropy_shift_const(ConstView3 a, double sigma, ConstView3 m, View3 out, std::size_t n);
// out_i = v_i - f_i x v_i / 2 + f_i <f_i, v_i> / 4
void dcay_inv_field(ConstView3 f, ConstView3 v, View3 out, std::size_t n);
// Effective field of the chain model; n >= 2.
void chain_field(ConstView3 m, const ChainFieldCoeffs& c, View3 out, std::size_t n);
// Landau-Lifshitz generator from state and effective field:
//   precession on:  a_i = h_i - lambda (h_i x m_i)
//   precession off: a_i = lambda (m_i x h_i)
void llg_generator(ConstView3 m, ConstView3 h, double lambda, bool precession,
                   View3 out, std::size_t n);

}  // namespace s2flow::kernels
