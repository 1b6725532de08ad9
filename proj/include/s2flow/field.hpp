#pragma once

// State containers for N coupled unit vectors, stored as structure-of-arrays
// so the per-site kernels can run vectorized.

#include <cstddef>
#include <vector>

#include "s2flow/vec3.hpp"

namespace s2flow {

struct SphereField {
    std::vector<double> x, y, z;
    double spacing = 0.0;  // site spacing for chain models, 0 if unused

    SphereField() = default;
    explicit SphereField(std::size_t n, double h = 0.0)
        : x(n, 0.0), y(n, 0.0), z(n, 0.0), spacing(h) {}

    std::size_t size() const { return x.size(); }
    Vec3 get(std::size_t i) const { return {x[i], y[i], z[i]}; }
    void set(std::size_t i, Vec3 v) { x[i] = v.x; y[i] = v.y; z[i] = v.z; }
};

// Elements of the Lie algebra so(3)^N (angular velocities, increments).
// Same layout as SphereField but without the unit-norm reading.
struct GeneratorField {
    std::vector<double> x, y, z;

    GeneratorField() = default;
    explicit GeneratorField(std::size_t n) : x(n, 0.0), y(n, 0.0), z(n, 0.0) {}

    std::size_t size() const { return x.size(); }
    Vec3 get(std::size_t i) const { return {x[i], y[i], z[i]}; }
    void set(std::size_t i, Vec3 v) { x[i] = v.x; y[i] = v.y; z[i] = v.z; }
    void resize(std::size_t n) { x.resize(n, 0.0); y.resize(n, 0.0); z.resize(n, 0.0); }
};

enum class ExpChoice { cay, exp };

// Per-site removal of the component along M: out_i = A_i - <M_i, A_i> M_i.
void project_orthogonal(const GeneratorField& a, const SphereField& m, GeneratorField& out);
GeneratorField project_orthogonal(const GeneratorField& a, const SphereField& m);

// Per-site shift along M: out_i = A_i + sigma_i M_i (sigma constant or per site).
void isotropy_shift(const GeneratorField& a, const std::vector<double>& sigma,
                    const SphereField& m, GeneratorField& out);
void isotropy_shift(const GeneratorField& a, double sigma,
                    const SphereField& m, GeneratorField& out);

// One group action per site: out_i = Exp(F_i) M_i. The only place a step
// touches the sphere, so norm preservation rides entirely on Exp.
void apply_update(const SphereField& m, const GeneratorField& f, ExpChoice exp_choice,
                  SphereField& out);
SphereField apply_update(const SphereField& m, const GeneratorField& f, ExpChoice exp_choice);

// max_i | |M_i| - 1 |
double max_norm_deviation(const SphereField& m);

// max_i angle(M_i, Ref_i), the state error metric used for convergence fits.
double max_site_angle(const SphereField& m, const SphereField& ref);

}  // namespace s2flow
