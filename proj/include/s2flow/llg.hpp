#pragma once

// 1-d micromagnetic chain on [0,1]: exchange between nearest neighbors with
// mirror end conditions, applied field, uniaxial anisotropy along an easy
// axis, and the thin-slab stray field -mu0 m_x ex. Dynamics is damped
// precession, or the pure overdamped gradient flow when precession is off.

#include <cstddef>
#include <cstdint>

#include "s2flow/field.hpp"
#include "s2flow/kernels/kernels.hpp"
#include "s2flow/system.hpp"

namespace s2flow {

struct LlgParams {
    double exchange_coeff = 1.0;  // continuum coefficient; the field uses coeff / h^2
    double mu0 = 1.0;
    double k_anis = 1.0;
    Vec3 easy_axis = {1.0, 0.0, 0.0};
    Vec3 h_app = {0.0, 0.0, 0.0};
    double lambda = 0.0;          // damping strength
    bool precession = true;       // false: dm/dt = lambda (m x H) x m
};

// Uniform +x chain of n >= 2 sites, spacing 1/(n-1).
SphereField llg_chain_state(std::size_t n);

// Transverse helix: site j at x_j = j h gets the normalized vector
// (1, amp sin(2 pi x_j), amp cos(2 pi x_j)).
SphereField llg_profile_state(std::size_t n, double amp);

// Independent per-site perturbation m_j <- normalize(m_j + eps u_j) with u_j
// uniform on the sphere; site j draws from its own derived stream so the
// result does not depend on evaluation order.
void llg_add_jitter(SphereField& m, double eps, std::uint64_t seed);

void llg_effective_field(const LlgParams& p, const SphereField& m, GeneratorField& h);

// Discrete free energy whose (weighted) gradient is exactly minus the
// effective field above: bond-sum exchange plus trapezoid-weighted local
// terms. Monotone along the damped flow, which the tests monitor.
double llg_free_energy(const LlgParams& p, const SphereField& m);

class LlgSystem : public System {
public:
    LlgSystem(const LlgParams& p, std::size_t n);

    std::size_t size() const override { return n_; }
    void generator(const SphereField& m, GeneratorField& a) const override;
    std::optional<double> energy(const SphereField& m) const override;

    // The effective field is affine in the state, so its derivatives along
    // the flow are exactly L m^(k) with L the linear part of the field
    // operator; the generator derivatives follow by the Leibniz rule.
    bool has_flow_derivatives() const override { return true; }
    void flow_derivatives(const SphereField& m, GeneratorVariant variant,
                          std::array<GeneratorField, 4>& out) const override;

    const LlgParams& params() const { return p_; }
    double spacing() const { return h_; }

private:
    LlgParams p_;
    std::size_t n_;
    double h_;
    kernels::ChainFieldCoeffs coeffs_;
    kernels::ChainFieldCoeffs lin_coeffs_;  // coeffs_ with the applied field zeroed
    mutable GeneratorField heff_;
    mutable GeneratorField md1_, md2_, md3_;
    mutable GeneratorField hd1_, hd2_, hd3_;
};

}  // namespace s2flow
