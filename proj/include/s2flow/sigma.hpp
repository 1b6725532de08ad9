#pragma once

// Isotropy-shift policies. The continuous flow is unchanged by A -> A + sigma M;
// the discrete one is not, and a good sigma buys accuracy. Policies return
// per-site values; `curvature` and `error_min` are finite-difference
// estimators evaluated once per step at the step's base point.

#include <vector>

#include "s2flow/system.hpp"

namespace s2flow {

struct SigmaPolicy {
    enum class Kind { zero, constant, curvature, error_min, analytic };
    Kind kind = Kind::zero;
    double value = 0.0;       // for constant
    bool centered = false;    // curvature: centered difference instead of one-sided

    static SigmaPolicy zero() { return {}; }
    static SigmaPolicy constant(double c) { return {Kind::constant, c, false}; }
    static SigmaPolicy curvature(bool centered = false) {
        return {Kind::curvature, 0.0, centered};
    }
    static SigmaPolicy error_min() { return {Kind::error_min, 0.0, false}; }
    static SigmaPolicy analytic() { return {Kind::analytic, 0.0, false}; }

    bool is_zero() const { return kind == Kind::zero; }
};

// sigma_i = k_g |X| per site: geodesic curvature of the integral curve of the
// projected generator, estimated from one auxiliary cay step of size dt.
//   omega   = A_orth(M)
//   M+      = cay(dt omega) M
//   domega ~= (A_orth(M+) - omega) / dt          (or centered with M-)
//   sigma_i = -<domega_i, omega_i x m_i> / |omega_i|^2
// Sites with |omega| < 1e-10 max(1, |A|) return 0 (equilibria keep the
// generator unshifted). Values are relative to the orthogonal generator.
std::vector<double> geodesic_curvature_sigma(const System& sys, const SphereField& m,
                                             double dt, bool centered = false);

// Per-site shift minimizing the leading local-error term of the first-order
// method, estimated with the same auxiliary step:
//   sigma_i = <dA_i, m_i x A_i> / |A_orth,i|^2
// Values are relative to the default generator.
std::vector<double> error_minimizing_sigma(const System& sys, const SphereField& m, double dt);

// Policy evaluation resolved against the generator variant the step uses:
// a shift defined relative to the orthogonal generator differs from the
// default-relative one by <A_i, m_i> per site, and this adjusts accordingly
// so that A_variant + sigma M is the same field either way.
void evaluate_sigma(const SigmaPolicy& policy, const System& sys, GeneratorVariant variant,
                    const SphereField& m, double dt, std::vector<double>& out);

}  // namespace s2flow
