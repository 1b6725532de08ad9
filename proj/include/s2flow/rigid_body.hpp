#pragma once

// Free rigid body in body coordinates: dm/dt = (I^{-1} m) x m on the unit
// sphere, kinetic energy H = <m, I^{-1} m> / 2. Includes the closed-form
// sigma shifts that make the first- and second-order methods exact or
// higher order, and the generator flow derivatives used by the truncated
// series scheme.

#include <array>
#include <cstdint>

#include "s2flow/rng.hpp"
#include "s2flow/system.hpp"
#include "s2flow/vec3.hpp"

namespace s2flow {

struct InertiaTensor {
    double i1 = 1.0, i2 = 1.0, i3 = 1.0;

    Vec3 apply(Vec3 v) const { return {i1 * v.x, i2 * v.y, i3 * v.z}; }
    Vec3 inv_apply(Vec3 v) const { return {v.x / i1, v.y / i2, v.z / i3}; }
};

enum class InertiaKind { triaxial, axisymmetric };

// The flow field X(m) = (I^{-1} m) x m.
Vec3 rb_vector_field(Vec3 m, const InertiaTensor& I);

double rb_energy(Vec3 m, const InertiaTensor& I);

// default: A = I^{-1} m; orthogonal: A - 2 H(m) m
Vec3 rb_generator(Vec3 m, const InertiaTensor& I, GeneratorVariant variant);

// Shift relative to the *default* generator that makes the first-order method
// follow the exact trajectory circles: sigma = -<X, I^{-1}X>/|X|^2.
// Two algebraically equal routes, kept separate as a cross-check:
// the quadratic form above, and -tau(u)/tau(Iu) with
// u_i = (I_j - I_k)^2 I_i (m_j m_k)^2, tau = sum of components.
// Both return 0 at (near-)equilibrium points |X| < 1e-10 max(1, |I^{-1}m|).
double rb_cor_sigma_quadratic(Vec3 m, const InertiaTensor& I);
double rb_cor_sigma_tau(Vec3 m, const InertiaTensor& I);

// F = I^{-1} m + sigma m with the quadratic-form sigma.
Vec3 rb_euler_cor(Vec3 m, const InertiaTensor& I);

// Defect coefficient of the corrected second-order scheme,
//   sigma = <Jn, u> / <Jd, u>,  u_j = (m_k m_l)^2,
//   Jn_j = -I_j (I_k + I_l)(I_k - I_l)^2,  Jd_j = 4 I1 I2 I3 I_j^2 (I_k - I_l)^2.
// Returns 0 when the denominator falls below 1e-14.
double rb_heun_sigma_def(Vec3 m, const InertiaTensor& I);

// A, A', A'', A''' along the exact flow through m, for either variant.
void rb_flow_derivatives(Vec3 m, const InertiaTensor& I, GeneratorVariant variant,
                         std::array<Vec3, 4>& out);

class RigidBodySystem final : public System {
public:
    explicit RigidBodySystem(InertiaTensor inertia) : inertia_(inertia) {}

    std::size_t size() const override { return 1; }
    void generator(const SphereField& m, GeneratorField& a) const override;
    std::optional<double> energy(const SphereField& m) const override;
    bool has_flow_derivatives() const override { return true; }
    void flow_derivatives(const SphereField& m, GeneratorVariant variant,
                          std::array<GeneratorField, 4>& out) const override;
    bool has_heun_defect_sigma() const override { return true; }
    void heun_defect_sigma(const SphereField& m, std::vector<double>& out) const override;
    bool has_analytic_sigma() const override { return true; }
    void analytic_sigma(const SphereField& m, std::vector<double>& out) const override;

    const InertiaTensor& inertia() const { return inertia_; }

private:
    InertiaTensor inertia_;
};

// Moments drawn uniformly from [0.5, 5]; triaxial enforces pairwise gaps
// >= 0.1, axisymmetric sets an exactly equal pair (distinct axis random)
// with the odd moment at least 0.1 away.
InertiaTensor rb_random_inertia(InertiaKind kind, Rng& rng);

// Point on a separatrix of a triaxial body: the great circle where
// H(m) = 1/(2 I_mid), parametrized exactly (no projection needed).
// branch selects one of the two circles, phase the point on it.
Vec3 rb_separatrix_point(const InertiaTensor& I, int branch, double phase);

SphereField rb_state(Vec3 m);

}  // namespace s2flow
