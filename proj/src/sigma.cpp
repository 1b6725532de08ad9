#include "s2flow/sigma.hpp"

#include <algorithm>
#include <cmath>

#include "s2flow/errors.hpp"

namespace s2flow {

void System::ambient_rhs(const SphereField& m, GeneratorField& out) const {
    GeneratorField a;
    generator(m, a);
    out.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out.set(i, cross(a.get(i), m.get(i)));
}

void System::flow_derivatives(const SphereField&, GeneratorVariant,
                              std::array<GeneratorField, 4>&) const {
    throw config_error("system does not provide generator flow derivatives");
}

void System::heun_defect_sigma(const SphereField&, std::vector<double>&) const {
    throw config_error("system does not provide a Heun defect coefficient");
}

void System::analytic_sigma(const SphereField&, std::vector<double>&) const {
    throw config_error("system does not provide an analytic sigma");
}

void evaluate_generator(const System& sys, GeneratorVariant variant,
                        const SphereField& m, GeneratorField& out) {
    sys.generator(m, out);
    if (variant == GeneratorVariant::orthogonal) project_orthogonal(out, m, out);
}

namespace {

// Auxiliary point on the flow direction: cay(s dt A_orth(M)) M.
SphereField flow_probe(const SphereField& m, const GeneratorField& a_orth, double sdt) {
    GeneratorField f(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) f.set(i, sdt * a_orth.get(i));
    return apply_update(m, f, ExpChoice::cay);
}

bool degenerate(Vec3 omega, Vec3 a) {
    return norm(omega) < 1e-10 * std::max(1.0, norm(a));
}

}  // namespace

std::vector<double> geodesic_curvature_sigma(const System& sys, const SphereField& m,
                                             double dt, bool centered) {
    GeneratorField a, a_orth;
    sys.generator(m, a);
    project_orthogonal(a, m, a_orth);

    // omega along the flow at the probe points, projected against the probe state
    const SphereField m_plus = flow_probe(m, a_orth, dt);
    GeneratorField ao_plus;
    sys.generator(m_plus, ao_plus);
    project_orthogonal(ao_plus, m_plus, ao_plus);

    GeneratorField ao_back = a_orth;
    double span = dt;
    if (centered) {
        const SphereField m_minus = flow_probe(m, a_orth, -dt);
        sys.generator(m_minus, ao_back);
        project_orthogonal(ao_back, m_minus, ao_back);
        span = 2.0 * dt;
    }

    std::vector<double> sigma(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Vec3 omega = a_orth.get(i);
        if (degenerate(omega, a.get(i))) continue;
        const Vec3 domega = (1.0 / span) * (ao_plus.get(i) - ao_back.get(i));
        sigma[i] = -dot(domega, cross(omega, m.get(i))) / norm2(omega);
    }
    return sigma;
}

std::vector<double> error_minimizing_sigma(const System& sys, const SphereField& m, double dt) {
    GeneratorField a, a_orth, a_plus;
    sys.generator(m, a);
    project_orthogonal(a, m, a_orth);
    const SphereField m_plus = flow_probe(m, a_orth, dt);
    sys.generator(m_plus, a_plus);

    std::vector<double> sigma(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Vec3 omega = a_orth.get(i);
        if (degenerate(omega, a.get(i))) continue;
        const Vec3 da = (1.0 / dt) * (a_plus.get(i) - a.get(i));
        sigma[i] = dot(da, cross(m.get(i), a.get(i))) / norm2(omega);
    }
    return sigma;
}

void evaluate_sigma(const SigmaPolicy& policy, const System& sys, GeneratorVariant variant,
                    const SphereField& m, double dt, std::vector<double>& out) {
    const std::size_t n = m.size();
    switch (policy.kind) {
        case SigmaPolicy::Kind::zero:
            out.assign(n, 0.0);
            return;
        case SigmaPolicy::Kind::constant:
            out.assign(n, policy.value);
            return;
        case SigmaPolicy::Kind::curvature: {
            out = geodesic_curvature_sigma(sys, m, dt, policy.centered);
            if (variant == GeneratorVariant::default_gen) {
                // orthogonal-relative -> default-relative
                GeneratorField a;
                sys.generator(m, a);
                for (std::size_t i = 0; i < n; ++i) out[i] -= dot(a.get(i), m.get(i));
            }
            return;
        }
        case SigmaPolicy::Kind::error_min: {
            out = error_minimizing_sigma(sys, m, dt);
            if (variant == GeneratorVariant::orthogonal) {
                GeneratorField a;
                sys.generator(m, a);
                for (std::size_t i = 0; i < n; ++i) out[i] += dot(a.get(i), m.get(i));
            }
            return;
        }
        case SigmaPolicy::Kind::analytic: {
            if (!sys.has_analytic_sigma())
                throw config_error("sigma policy 'analytic' needs system support");
            sys.analytic_sigma(m, out);
            if (variant == GeneratorVariant::orthogonal) {
                GeneratorField a;
                sys.generator(m, a);
                for (std::size_t i = 0; i < n; ++i) out[i] += dot(a.get(i), m.get(i));
            }
            return;
        }
    }
    throw config_error("unknown sigma policy");
}

}  // namespace s2flow
