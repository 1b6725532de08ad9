#include "s2flow/rigid_body.hpp"

#include <algorithm>
#include <cmath>

#include "s2flow/errors.hpp"

namespace s2flow {

Vec3 rb_vector_field(Vec3 m, const InertiaTensor& I) {
    return cross(I.inv_apply(m), m);
}

double rb_energy(Vec3 m, const InertiaTensor& I) {
    return 0.5 * dot(m, I.inv_apply(m));
}

Vec3 rb_generator(Vec3 m, const InertiaTensor& I, GeneratorVariant variant) {
    const Vec3 a = I.inv_apply(m);
    if (variant == GeneratorVariant::default_gen) return a;
    return a - (2.0 * rb_energy(m, I)) * m;
}

namespace {

bool rb_degenerate(Vec3 m, const InertiaTensor& I, Vec3 x) {
    return norm(x) < 1e-10 * std::max(1.0, norm(I.inv_apply(m)));
}

}  // namespace

double rb_cor_sigma_quadratic(Vec3 m, const InertiaTensor& I) {
    const Vec3 x = rb_vector_field(m, I);
    if (rb_degenerate(m, I, x)) return 0.0;
    return -dot(x, I.inv_apply(x)) / norm2(x);
}

double rb_cor_sigma_tau(Vec3 m, const InertiaTensor& I) {
    const Vec3 x = rb_vector_field(m, I);
    if (rb_degenerate(m, I, x)) return 0.0;
    const double p1 = m.y * m.z, p2 = m.z * m.x, p3 = m.x * m.y;
    const double d1 = I.i2 - I.i3, d2 = I.i3 - I.i1, d3 = I.i1 - I.i2;
    const double u1 = d1 * d1 * I.i1 * (p1 * p1);
    const double u2 = d2 * d2 * I.i2 * (p2 * p2);
    const double u3 = d3 * d3 * I.i3 * (p3 * p3);
    const double num = (u1 + u2) + u3;
    const double den = (I.i1 * u1 + I.i2 * u2) + I.i3 * u3;
    return -num / den;
}

Vec3 rb_euler_cor(Vec3 m, const InertiaTensor& I) {
    return I.inv_apply(m) + rb_cor_sigma_quadratic(m, I) * m;
}

double rb_heun_sigma_def(Vec3 m, const InertiaTensor& I) {
    const double u1 = (m.y * m.z) * (m.y * m.z);
    const double u2 = (m.z * m.x) * (m.z * m.x);
    const double u3 = (m.x * m.y) * (m.x * m.y);
    const double d1 = I.i2 - I.i3, d2 = I.i3 - I.i1, d3 = I.i1 - I.i2;
    const double jn1 = -I.i1 * (I.i2 + I.i3) * d1 * d1;
    const double jn2 = -I.i2 * (I.i3 + I.i1) * d2 * d2;
    const double jn3 = -I.i3 * (I.i1 + I.i2) * d3 * d3;
    const double v = 4.0 * I.i1 * I.i2 * I.i3;
    const double jd1 = v * I.i1 * I.i1 * d1 * d1;
    const double jd2 = v * I.i2 * I.i2 * d2 * d2;
    const double jd3 = v * I.i3 * I.i3 * d3 * d3;
    const double den = (jd1 * u1 + jd2 * u2) + jd3 * u3;
    if (std::abs(den) < 1e-14) return 0.0;
    return ((jn1 * u1 + jn2 * u2) + jn3 * u3) / den;
}

void rb_flow_derivatives(Vec3 m, const InertiaTensor& I, GeneratorVariant variant,
                         std::array<Vec3, 4>& out) {
    // Leibniz recursion along the exact flow m' = A x m, A = I^{-1} m.
    const Vec3 m0 = m;
    const Vec3 a0 = I.inv_apply(m0);
    const Vec3 m1 = cross(a0, m0);
    const Vec3 a1 = I.inv_apply(m1);
    const Vec3 m2 = cross(a1, m0) + cross(a0, m1);
    const Vec3 a2 = I.inv_apply(m2);
    const Vec3 m3 = cross(a2, m0) + 2.0 * cross(a1, m1) + cross(a0, m2);
    const Vec3 a3 = I.inv_apply(m3);
    out = {a0, a1, a2, a3};
    if (variant == GeneratorVariant::orthogonal) {
        // H is constant along the flow, so d^j(A - 2H m) = A^(j) - 2H m^(j).
        const double twoh = 2.0 * rb_energy(m0, I);
        out[0] -= twoh * m0;
        out[1] -= twoh * m1;
        out[2] -= twoh * m2;
        out[3] -= twoh * m3;
    }
}

void RigidBodySystem::generator(const SphereField& m, GeneratorField& a) const {
    a.resize(1);
    a.set(0, inertia_.inv_apply(m.get(0)));
}

std::optional<double> RigidBodySystem::energy(const SphereField& m) const {
    return rb_energy(m.get(0), inertia_);
}

void RigidBodySystem::flow_derivatives(const SphereField& m, GeneratorVariant variant,
                                       std::array<GeneratorField, 4>& out) const {
    std::array<Vec3, 4> d;
    rb_flow_derivatives(m.get(0), inertia_, variant, d);
    for (int j = 0; j < 4; ++j) {
        out[j].resize(1);
        out[j].set(0, d[j]);
    }
}

void RigidBodySystem::heun_defect_sigma(const SphereField& m, std::vector<double>& out) const {
    out.assign(1, rb_heun_sigma_def(m.get(0), inertia_));
}

void RigidBodySystem::analytic_sigma(const SphereField& m, std::vector<double>& out) const {
    out.assign(1, rb_cor_sigma_quadratic(m.get(0), inertia_));
}

InertiaTensor rb_random_inertia(InertiaKind kind, Rng& rng) {
    if (kind == InertiaKind::triaxial) {
        for (;;) {
            const double a = rng.uniform(0.5, 5.0);
            const double b = rng.uniform(0.5, 5.0);
            const double c = rng.uniform(0.5, 5.0);
            if (std::abs(a - b) >= 0.1 && std::abs(b - c) >= 0.1 && std::abs(a - c) >= 0.1)
                return {a, b, c};
        }
    }
    for (;;) {
        const double pair = rng.uniform(0.5, 5.0);
        const double odd = rng.uniform(0.5, 5.0);
        if (std::abs(pair - odd) < 0.1) continue;
        switch (rng.next_u64() % 3) {
            case 0: return {odd, pair, pair};
            case 1: return {pair, odd, pair};
            default: return {pair, pair, odd};
        }
    }
}

Vec3 rb_separatrix_point(const InertiaTensor& I, int branch, double phase) {
    // sort axes by moment: s[0] smallest
    struct Axis { double moment; int idx; };
    std::array<Axis, 3> ax = {{{I.i1, 0}, {I.i2, 1}, {I.i3, 2}}};
    std::sort(ax.begin(), ax.end(), [](Axis a, Axis b) { return a.moment < b.moment; });
    const double imin = ax[0].moment, imid = ax[1].moment, imax = ax[2].moment;
    if (imin == imid || imid == imax)
        throw config_error("separatrix needs a triaxial tensor");
    const double a = std::sqrt(1.0 / imin - 1.0 / imid);
    const double b = std::sqrt(1.0 / imid - 1.0 / imax);
    const double r = std::sqrt(a * a + b * b);
    // circle basis in sorted coordinates: p in the (min,max) plane, q = mid axis
    const double sgn = (branch % 2 == 0) ? 1.0 : -1.0;
    const Vec3 p = {b / r, 0.0, sgn * a / r};
    const double c = std::cos(phase), s = std::sin(phase);
    const Vec3 ms = {c * p.x, s, c * p.z};  // cos(phase) p + sin(phase) e_mid
    Vec3 m;
    double* out[3] = {&m.x, &m.y, &m.z};
    *out[ax[0].idx] = ms.x;
    *out[ax[1].idx] = ms.y;
    *out[ax[2].idx] = ms.z;
    return m;
}

SphereField rb_state(Vec3 m) {
    SphereField f(1);
    f.set(0, m);
    return f;
}

}  // namespace s2flow
