#pragma once

// A system supplies the generator A(M) of the flow dM/dt = A(M) x M,
// site by site. Optional capabilities (energy, flow derivatives for the
// truncated-series scheme, the Heun defect coefficient) are feature-tested
// by the integrators and raise config_error when required but missing.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "s2flow/errors.hpp"
#include "s2flow/field.hpp"

namespace s2flow {

enum class GeneratorVariant { default_gen, orthogonal };

class System {
public:
    virtual ~System() = default;

    virtual std::size_t size() const = 0;

    // Default (unprojected) generator.
    virtual void generator(const SphereField& m, GeneratorField& a) const = 0;

    // Ambient right-hand side A(M) x M, valid for non-unit states too.
    // The cross-product identities behind the generator forms hold for any
    // vector length, so the generic implementation is exact.
    virtual void ambient_rhs(const SphereField& m, GeneratorField& out) const;

    virtual std::optional<double> energy(const SphereField&) const { return std::nullopt; }

    // A(t), A'(t), A''(t), A'''(t) along the exact flow through m,
    // for the requested generator variant.
    virtual bool has_flow_derivatives() const { return false; }
    virtual void flow_derivatives(const SphereField& m, GeneratorVariant variant,
                                  std::array<GeneratorField, 4>& out) const;

    // Per-site defect coefficient for the corrected second-order scheme.
    virtual bool has_heun_defect_sigma() const { return false; }
    virtual void heun_defect_sigma(const SphereField& m, std::vector<double>& out) const;

    // Closed-form per-site sigma relative to the default generator, where the
    // model admits one (rigid body). Used by the exact corrected Euler method.
    virtual bool has_analytic_sigma() const { return false; }
    virtual void analytic_sigma(const SphereField& m, std::vector<double>& out) const;
};

// Variant-resolved generator: default, or projected orthogonal to M.
void evaluate_generator(const System& sys, GeneratorVariant variant,
                        const SphereField& m, GeneratorField& out);

}  // namespace s2flow
