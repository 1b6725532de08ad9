#include "s2flow/field.hpp"

#include <algorithm>
#include <cmath>

#include "s2flow/errors.hpp"
#include "s2flow/kernels/kernels.hpp"

namespace s2flow {

namespace {

kernels::ConstView3 view(const SphereField& f) { return {f.x.data(), f.y.data(), f.z.data()}; }
kernels::ConstView3 view(const GeneratorField& f) { return {f.x.data(), f.y.data(), f.z.data()}; }
kernels::View3 mut_view(SphereField& f) { return {f.x.data(), f.y.data(), f.z.data()}; }
kernels::View3 mut_view(GeneratorField& f) { return {f.x.data(), f.y.data(), f.z.data()}; }

void check_sizes(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw config_error(std::string(what) + ": size mismatch");
}

}  // namespace

void project_orthogonal(const GeneratorField& a, const SphereField& m, GeneratorField& out) {
    check_sizes(a.size(), m.size(), "project_orthogonal");
    out.resize(a.size());
    kernels::project_orthogonal(view(a), view(m), mut_view(out), a.size());
}

GeneratorField project_orthogonal(const GeneratorField& a, const SphereField& m) {
    GeneratorField out;
    project_orthogonal(a, m, out);
    return out;
}

void isotropy_shift(const GeneratorField& a, const std::vector<double>& sigma,
                    const SphereField& m, GeneratorField& out) {
    check_sizes(a.size(), m.size(), "isotropy_shift");
    check_sizes(a.size(), sigma.size(), "isotropy_shift");
    out.resize(a.size());
    kernels::isotropy_shift(view(a), sigma.data(), view(m), mut_view(out), a.size());
}

void isotropy_shift(const GeneratorField& a, double sigma,
                    const SphereField& m, GeneratorField& out) {
    check_sizes(a.size(), m.size(), "isotropy_shift");
    out.resize(a.size());
    kernels::isotropy_shift_const(view(a), sigma, view(m), mut_view(out), a.size());
}

void apply_update(const SphereField& m, const GeneratorField& f, ExpChoice exp_choice,
                  SphereField& out) {
    check_sizes(m.size(), f.size(), "apply_update");
    out.x.resize(m.size());
    out.y.resize(m.size());
    out.z.resize(m.size());
    out.spacing = m.spacing;
    if (exp_choice == ExpChoice::cay)
        kernels::cay_apply_field(view(f), view(m), mut_view(out), m.size());
    else
        kernels::exp_apply_field(view(f), view(m), mut_view(out), m.size());
}

SphereField apply_update(const SphereField& m, const GeneratorField& f, ExpChoice exp_choice) {
    SphereField out;
    apply_update(m, f, exp_choice, out);
    return out;
}

double max_norm_deviation(const SphereField& m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        worst = std::max(worst, std::abs(norm(m.get(i)) - 1.0));
    return worst;
}

double max_site_angle(const SphereField& m, const SphereField& ref) {
    check_sizes(m.size(), ref.size(), "max_site_angle");
    double worst = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        worst = std::max(worst, angle_between(m.get(i), ref.get(i)));
    return worst;
}

}  // namespace s2flow
