#include <doctest.h>

#include <array>
#include <cmath>

#include "s2flow/rigid_body.hpp"
#include "s2flow/rng.hpp"

using namespace s2flow;

namespace {

// Independent reference flow: plain RK4 on dm/dt = (I^{-1} m) x m in R^3,
// signed time step. Used only to cross-check analytic derivatives.
Vec3 flow_rk4(Vec3 m, const InertiaTensor& I, double t, int substeps) {
    const double h = t / substeps;
    auto f = [&](Vec3 v) { return cross(I.inv_apply(v), v); };
    for (int k = 0; k < substeps; ++k) {
        const Vec3 k1 = f(m);
        const Vec3 k2 = f(m + (0.5 * h) * k1);
        const Vec3 k3 = f(m + (0.5 * h) * k2);
        const Vec3 k4 = f(m + h * k3);
        m = m + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return m;
}

Vec3 gen_along_flow(Vec3 m0, const InertiaTensor& I, GeneratorVariant v, double t) {
    const Vec3 m = (t == 0.0) ? m0 : flow_rk4(m0, I, t, 400);
    return rb_generator(m, I, v);
}

}  // namespace

TEST_CASE("generator, energy and flow field at hand-checked points") {
    const InertiaTensor I{2, 4, 8};
    const Vec3 m{1, 0, 0};
    CHECK(rb_energy(m, I) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(norm(rb_generator(m, I, GeneratorVariant::default_gen) - Vec3{0.5, 0, 0}) < 1e-16);
    CHECK(norm(rb_generator(m, I, GeneratorVariant::orthogonal)) < 1e-16);

    const InertiaTensor J{1, 2, 4};
    const double r = 1.0 / std::sqrt(2.0);
    const Vec3 p{0, r, r};
    CHECK(norm(rb_vector_field(p, J) - Vec3{0.125, 0, 0}) < 1e-15);
}

TEST_CASE("orthogonal generator produces the same flow field") {
    Rng rng(31);
    for (int k = 0; k < 200; ++k) {
        const InertiaTensor I = rb_random_inertia(InertiaKind::triaxial, rng);
        const Vec3 m = rng.unit_vector();
        const Vec3 ad = rb_generator(m, I, GeneratorVariant::default_gen);
        const Vec3 ao = rb_generator(m, I, GeneratorVariant::orthogonal);
        CHECK(norm(cross(ad, m) - cross(ao, m)) < 1e-14);
        CHECK(std::abs(dot(ao, m)) < 1e-14);        // truly tangent
        CHECK(norm(cross(ad, m) - rb_vector_field(m, I)) < 1e-15);
    }
}

TEST_CASE("the two closed forms of the first-order correction agree") {
    const InertiaTensor J{1, 2, 4};
    const double r = 1.0 / std::sqrt(2.0);
    const Vec3 p{0, r, r};
    CHECK(rb_cor_sigma_quadratic(p, J) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(rb_cor_sigma_tau(p, J) == doctest::Approx(-1.0).epsilon(1e-14));

    Rng rng(57);
    double worst_sigma = 0.0, worst_f = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const InertiaTensor I = rb_random_inertia(InertiaKind::triaxial, rng);
        const Vec3 m = rng.unit_vector();
        const double sq = rb_cor_sigma_quadratic(m, I);
        const double st = rb_cor_sigma_tau(m, I);
        worst_sigma = std::max(worst_sigma, std::abs(sq - st));
        const Vec3 fa = rb_euler_cor(m, I);
        const Vec3 fb = I.inv_apply(m) + st * m;
        worst_f = std::max(worst_f, norm(fa - fb));
    }
    CHECK(worst_sigma < 1e-12);
    CHECK(worst_f < 1e-12);
}

TEST_CASE("axisymmetric closed forms") {
    Rng rng(99);
    for (int k = 0; k < 100; ++k) {
        const InertiaTensor I = rb_random_inertia(InertiaKind::axisymmetric, rng);
        const Vec3 m = rng.unit_vector();
        // the correction collapses to -1 / I_pair off the equilibria
        const double ipair = (I.i1 == I.i2) ? I.i1 : ((I.i1 == I.i3) ? I.i1 : I.i2);
        if (norm(rb_vector_field(m, I)) > 1e-6) {
            CHECK(rb_cor_sigma_quadratic(m, I) == doctest::Approx(-1.0 / ipair).epsilon(1e-10));
        }
        // the Heun defect coefficient is position independent:
        // -(I_pair + I_odd) / (4 I_pair^3 I_odd)
        const double iodd = I.i1 + I.i2 + I.i3 - 2.0 * ipair;
        const double want = -(ipair + iodd) / (4.0 * ipair * ipair * ipair * iodd);
        CHECK(rb_heun_sigma_def(m, I) == doctest::Approx(want).epsilon(1e-10));
    }
    // frozen spot value: I = (1,1,2) gives -3/8
    CHECK(rb_heun_sigma_def(normalized({0.3, -0.5, 0.8}), InertiaTensor{1, 1, 2}) ==
          doctest::Approx(-0.375).epsilon(1e-13));
}

TEST_CASE("triaxial Heun defect at a hand-checked point") {
    const InertiaTensor J{1, 2, 4};
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(rb_heun_sigma_def({0, r, r}, J) == doctest::Approx(-0.1875).epsilon(1e-14));
}

TEST_CASE("equilibria return zero shifts and the plain generator") {
    const InertiaTensor I{1.5, 2.5, 4.5};
    for (const Vec3 m : {Vec3{1, 0, 0}, Vec3{0, -1, 0}, Vec3{0, 0, 1}}) {
        CHECK(rb_cor_sigma_quadratic(m, I) == 0.0);
        CHECK(rb_cor_sigma_tau(m, I) == 0.0);
        CHECK(rb_heun_sigma_def(m, I) == 0.0);
        CHECK(norm(rb_euler_cor(m, I) - I.inv_apply(m)) == 0.0);
    }
}

TEST_CASE("flow derivatives match finite differences along the exact flow") {
    Rng rng(404);
    for (int k = 0; k < 20; ++k) {
        const InertiaTensor I = rb_random_inertia(InertiaKind::triaxial, rng);
        const Vec3 m = rng.unit_vector();
        for (GeneratorVariant v : {GeneratorVariant::default_gen, GeneratorVariant::orthogonal}) {
            std::array<Vec3, 4> d;
            rb_flow_derivatives(m, I, v, d);
            CHECK(norm(d[0] - gen_along_flow(m, I, v, 0.0)) < 1e-14);
            const double e = 5e-3;
            const Vec3 ap = gen_along_flow(m, I, v, e);
            const Vec3 am = gen_along_flow(m, I, v, -e);
            const Vec3 ap2 = gen_along_flow(m, I, v, 2.0 * e);
            const Vec3 am2 = gen_along_flow(m, I, v, -2.0 * e);
            const Vec3 fd1 = (1.0 / (2.0 * e)) * (ap - am);
            const Vec3 fd2 = (1.0 / (e * e)) * (ap - 2.0 * d[0] + am);
            const Vec3 fd3 = (1.0 / (2.0 * e * e * e)) * (ap2 - 2.0 * ap + 2.0 * am - am2);
            CHECK(norm(fd1 - d[1]) < 1e-3 * (1.0 + norm(d[1])));
            CHECK(norm(fd2 - d[2]) < 5e-3 * (1.0 + norm(d[2])));
            CHECK(norm(fd3 - d[3]) < 5e-2 * (1.0 + norm(d[3])));
        }
    }
}

TEST_CASE("separatrix points sit exactly on the critical energy level") {
    Rng rng(2718);
    for (int k = 0; k < 50; ++k) {
        const InertiaTensor I = rb_random_inertia(InertiaKind::triaxial, rng);
        const double imid = I.i1 + I.i2 + I.i3 -
                            std::max({I.i1, I.i2, I.i3}) - std::min({I.i1, I.i2, I.i3});
        const double hc = 1.0 / (2.0 * imid);
        for (int branch : {0, 1})
            for (int j = 0; j < 16; ++j) {
                const Vec3 m = rb_separatrix_point(I, branch, rng.uniform(0.0, 6.3));
                CHECK(std::abs(norm(m) - 1.0) < 1e-15);
                CHECK(std::abs(rb_energy(m, I) - hc) < 1e-14 * (1.0 + hc));
            }
    }
    CHECK_THROWS_AS(rb_separatrix_point(InertiaTensor{2, 2, 3}, 0, 0.0), config_error);
}

TEST_CASE("random inertia tensors respect their contracts") {
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        const InertiaTensor t = rb_random_inertia(InertiaKind::triaxial, rng);
        for (double v : {t.i1, t.i2, t.i3}) {
            CHECK(v >= 0.5);
            CHECK(v <= 5.0);
        }
        CHECK(std::abs(t.i1 - t.i2) >= 0.1);
        CHECK(std::abs(t.i2 - t.i3) >= 0.1);
        CHECK(std::abs(t.i1 - t.i3) >= 0.1);
        const InertiaTensor a = rb_random_inertia(InertiaKind::axisymmetric, rng);
        const bool pair12 = a.i1 == a.i2, pair13 = a.i1 == a.i3, pair23 = a.i2 == a.i3;
        CHECK((pair12 || pair13 || pair23));
        const double podd = pair12 ? a.i3 : (pair13 ? a.i2 : a.i1);
        const double ppair = pair12 ? a.i1 : (pair13 ? a.i1 : a.i2);
        CHECK(std::abs(podd - ppair) >= 0.1);
    }
}

TEST_CASE("system wrapper exposes every capability") {
    const RigidBodySystem sys(InertiaTensor{1, 2, 4});
    CHECK(sys.size() == 1);
    CHECK(sys.has_flow_derivatives());
    CHECK(sys.has_heun_defect_sigma());
    CHECK(sys.has_analytic_sigma());
    const double r = 1.0 / std::sqrt(2.0);
    const SphereField m = rb_state({0, r, r});
    GeneratorField rhs;
    sys.ambient_rhs(m, rhs);
    CHECK(norm(rhs.get(0) - rb_vector_field({0, r, r}, sys.inertia())) < 1e-15);
    CHECK(*sys.energy(m) == doctest::Approx(rb_energy({0, r, r}, sys.inertia())));
    std::vector<double> sg;
    sys.analytic_sigma(m, sg);
    CHECK(sg.size() == 1);
    CHECK(sg[0] == doctest::Approx(-1.0).epsilon(1e-14));
    sys.heun_defect_sigma(m, sg);
    CHECK(sg[0] == doctest::Approx(-0.1875).epsilon(1e-14));
}
