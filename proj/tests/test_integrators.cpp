#include <doctest.h>

#include <cmath>
#include <vector>

#include "s2flow/errors.hpp"
#include "s2flow/integrators.hpp"
#include "s2flow/llg.hpp"
#include "s2flow/rigid_body.hpp"
#include "s2flow/rng.hpp"

using namespace s2flow;

namespace {

const InertiaTensor kI{1.0, 2.0, 4.0};
const Vec3 kM0 = normalized({0.2, 0.7, 0.75});

SchemeConfig make_cfg(Scheme s) {
    SchemeConfig cfg;
    cfg.scheme = s;
    return cfg;
}

// reference orbit by the fourth-order geometric scheme at a tiny step
SphereField rb_reference(Vec3 m0, double t_final) {
    const RigidBodySystem sys(kI);
    return integrate(sys, rb_state(m0), 1e-4, t_final, make_cfg(Scheme::rkmk4), {0}).final_state;
}

double rb_error_at(Scheme s, double dt, double t_final, const SphereField& ref) {
    const RigidBodySystem sys(kI);
    const Trajectory tr = integrate(sys, rb_state(kM0), dt, t_final, make_cfg(s), {0});
    return max_site_angle(tr.final_state, ref);
}

}  // namespace

TEST_CASE("step_count contract") {
    CHECK(step_count(1.0, 0.1) == 10);
    CHECK(step_count(0.3, 0.1) == 3);
    CHECK(step_count(1.0, 0.3) == 4);
    CHECK(step_count(1.0, 1e-3) == 1000);
    CHECK(step_count(0.05, 0.1) == 0);
    CHECK(step_count(0.0, 0.1) == 0);
    CHECK(step_count(500.0, 0.1) == 5000);
    CHECK_THROWS_AS(step_count(1.0, 0.0), config_error);
    CHECK_THROWS_AS(step_count(1.0, -0.1), config_error);
    CHECK_THROWS_AS(step_count(-1.0, 0.1), config_error);
}

TEST_CASE("every scheme is consistent with the ambient flow") {
    const RigidBodySystem sys(kI);
    GeneratorField rhs;
    sys.ambient_rhs(rb_state(kM0), rhs);
    const Vec3 x = rhs.get(0);
    for (Scheme s : {Scheme::euler_fwd, Scheme::euler_impl, Scheme::heun, Scheme::rkmk4,
                     Scheme::sy4, Scheme::classical_euler, Scheme::classical_heun,
                     Scheme::classical_rk4}) {
        const double dt = 1e-5;
        const SphereField out = step_once(sys, rb_state(kM0), dt, make_cfg(s));
        const Vec3 slope = (1.0 / dt) * (out.get(0) - kM0);
        CHECK(norm(slope - x) < 50.0 * dt);
    }
}

TEST_CASE("error halving ratios match the orders") {
    const double t_final = 1.0;
    const SphereField ref = rb_reference(kM0, t_final);
    auto ratio = [&](Scheme s, double dt) {
        return rb_error_at(s, dt, t_final, ref) / rb_error_at(s, 0.5 * dt, t_final, ref);
    };
    CHECK(ratio(Scheme::euler_fwd, 0.02) == doctest::Approx(2.0).epsilon(0.35));
    CHECK(ratio(Scheme::euler_impl, 0.02) == doctest::Approx(2.0).epsilon(0.35));
    CHECK(ratio(Scheme::classical_euler, 0.02) == doctest::Approx(2.0).epsilon(0.35));
    CHECK(ratio(Scheme::heun, 0.05) == doctest::Approx(4.0).epsilon(0.4));
    CHECK(ratio(Scheme::classical_heun, 0.05) == doctest::Approx(4.0).epsilon(0.4));
    CHECK(ratio(Scheme::rkmk4, 0.2) == doctest::Approx(16.0).epsilon(0.5));
    CHECK(ratio(Scheme::classical_rk4, 0.2) == doctest::Approx(16.0).epsilon(0.5));
    CHECK(ratio(Scheme::sy4, 0.2) == doctest::Approx(16.0).epsilon(0.5));
}

TEST_CASE("geometric schemes hold unit norms over many steps") {
    const RigidBodySystem sys(kI);
    for (Scheme s : {Scheme::euler_fwd, Scheme::euler_impl, Scheme::heun, Scheme::rkmk4,
                     Scheme::sy4}) {
        for (ExpChoice e : {ExpChoice::cay, ExpChoice::exp}) {
            SchemeConfig cfg = make_cfg(s);
            cfg.exp_choice = e;
            const Trajectory tr = integrate(sys, rb_state(kM0), 0.01, 100.0, cfg, {0});
            CHECK(tr.max_norm_dev < 1e-13);
        }
    }
}

TEST_CASE("classical Euler drifts off the sphere, geometric Euler does not") {
    const RigidBodySystem sys(kI);
    const Trajectory cl =
        integrate(sys, rb_state(kM0), 0.01, 10.0, make_cfg(Scheme::classical_euler), {0});
    const Trajectory ge =
        integrate(sys, rb_state(kM0), 0.01, 10.0, make_cfg(Scheme::euler_fwd), {0});
    CHECK(cl.max_norm_dev > 1e-6);
    CHECK(ge.max_norm_dev < 1e-14);
}

TEST_CASE("implicit Euler is the adjoint of the forward step") {
    const RigidBodySystem sys(kI);
    Stepper impl(sys, make_cfg(Scheme::euler_impl));
    Stepper fwd(sys, make_cfg(Scheme::euler_fwd));
    SphereField mid, back;
    impl.step(rb_state(kM0), 0.05, mid, 0);
    fwd.step(mid, -0.05, back, 0);
    CHECK(norm(back.get(0) - kM0) < 1e-12);
}

TEST_CASE("implicit solver reports divergence with the step index") {
    const RigidBodySystem sys(kI);
    SchemeConfig cfg = make_cfg(Scheme::euler_impl);
    cfg.impl_max_iters = 8;
    bool thrown = false;
    try {
        integrate(sys, rb_state(kM0), 50.0, 500.0, cfg, {0});
    } catch (const numerical_error& e) {
        thrown = true;
        CHECK(e.step == 1);
    }
    CHECK(thrown);
}

TEST_CASE("blowup is caught and reported as numerical_error") {
    const RigidBodySystem sys(kI);
    CHECK_THROWS_AS(
        integrate(sys, rb_state(kM0), 1e8, 1e10, make_cfg(Scheme::classical_euler), {0}),
        numerical_error);
}

TEST_CASE("dcor shrinks the Heun energy error") {
    const RigidBodySystem sys(kI);
    SchemeConfig plain = make_cfg(Scheme::heun);
    SchemeConfig dcor = make_cfg(Scheme::heun);
    dcor.correction = Correction::dcor;
    const Trajectory a = integrate(sys, rb_state(kM0), 0.1, 10.0, plain, {0});
    const Trajectory b = integrate(sys, rb_state(kM0), 0.1, 10.0, dcor, {0});
    CHECK(b.max_energy_err < a.max_energy_err / 5.0);
    CHECK(b.max_norm_dev < 1e-13);
}

TEST_CASE("recording stride and sigma tracking") {
    const RigidBodySystem sys(kI);
    IntegrateOptions opt;
    opt.record_stride = 3;
    const Trajectory tr = integrate(sys, rb_state(kM0), 0.1, 1.0, make_cfg(Scheme::heun), opt);
    CHECK(tr.n_steps == 10);
    // recorded times are the exact products k * dt
    CHECK(tr.times == std::vector<double>{0.0 * 0.1, 3.0 * 0.1, 6.0 * 0.1, 9.0 * 0.1,
                                          10.0 * 0.1});
    CHECK(tr.states.size() == 5);
    CHECK(tr.norm_dev.size() == 5);
    CHECK(tr.energy.size() == 5);

    IntegrateOptions ends;
    ends.record_stride = 0;
    const Trajectory tr2 = integrate(sys, rb_state(kM0), 0.1, 1.0, make_cfg(Scheme::heun), ends);
    CHECK(tr2.times == std::vector<double>{0.0, 1.0});

    SchemeConfig cfg = make_cfg(Scheme::euler_fwd);
    cfg.sigma = SigmaPolicy::analytic();
    IntegrateOptions track;
    track.track_site = 0;
    const Trajectory tr3 = integrate(sys, rb_state(kM0), 0.1, 1.0, cfg, track);
    CHECK(tr3.sigma_track.size() == 10);
    for (double s : tr3.sigma_track) CHECK(s < 0.0);  // correction is negative here
}

TEST_CASE("misconfigured steppers are rejected up front") {
    const RigidBodySystem rb(kI);
    LlgParams lp;
    const LlgSystem llg(lp, 8);

    SchemeConfig c1 = make_cfg(Scheme::sy4);
    c1.sigma = SigmaPolicy::constant(1.0);
    CHECK_THROWS_AS(Stepper(rb, c1), config_error);

    SchemeConfig c2 = make_cfg(Scheme::rkmk4);
    c2.correction = Correction::dcor;
    CHECK_THROWS_AS(Stepper(rb, c2), config_error);

    SchemeConfig c3 = make_cfg(Scheme::heun);
    c3.correction = Correction::dcor;
    CHECK_THROWS_AS(Stepper(llg, c3), config_error);

    // a system advertising no optional capability at all
    struct Bare final : System {
        std::size_t size() const override { return 1; }
        void generator(const SphereField& m, GeneratorField& a) const override {
            a.resize(1);
            a.set(0, cross({0, 0, 1}, m.get(0)));
        }
    } bare;
    SchemeConfig c4 = make_cfg(Scheme::sy4);
    CHECK_THROWS_AS(Stepper(bare, c4), config_error);
    CHECK_NOTHROW(Stepper(llg, c4));  // the chain provides flow derivatives

    SchemeConfig c4b = make_cfg(Scheme::heun);
    c4b.correction = Correction::dcor;
    CHECK_THROWS_AS(Stepper(bare, c4b), config_error);

    SchemeConfig c5 = make_cfg(Scheme::classical_rk4);
    c5.sigma = SigmaPolicy::constant(2.0);
    CHECK_THROWS_AS(Stepper(rb, c5), config_error);

    SchemeConfig c6 = make_cfg(Scheme::euler_fwd);
    c6.sigma = SigmaPolicy::analytic();
    CHECK_THROWS_AS(Stepper(llg, c6), config_error);

    CHECK_THROWS_AS(scheme_from_name("rk5"), config_error);
    CHECK(scheme_from_name("rkmk4") == Scheme::rkmk4);
    CHECK(std::string(scheme_name(Scheme::euler_impl)) == "euler_impl");
}

TEST_CASE("integrate matches repeated single steps") {
    LlgParams p;
    p.exchange_coeff = 1.0 / 81.0;
    p.h_app = {2, 0, 0};
    p.lambda = 0.1;
    const LlgSystem sys(p, 10);
    SphereField m = llg_profile_state(10, 0.4);
    const Trajectory tr = integrate(sys, m, 0.01, 0.1, make_cfg(Scheme::rkmk4), {0});
    SphereField cur = m;
    Stepper st(sys, make_cfg(Scheme::rkmk4));
    for (int k = 0; k < 10; ++k) {
        SphereField next;
        st.step(cur, 0.01, next, k);
        cur = next;
    }
    for (std::size_t j = 0; j < cur.size(); ++j)
        CHECK(norm(cur.get(j) - tr.final_state.get(j)) == 0.0);
}

TEST_CASE("sy4 default and orthogonal variants both integrate the flow") {
    const RigidBodySystem sys(kI);
    const SphereField ref = rb_reference(kM0, 1.0);
    for (GeneratorVariant v : {GeneratorVariant::default_gen, GeneratorVariant::orthogonal}) {
        SchemeConfig cfg = make_cfg(Scheme::sy4);
        cfg.variant = v;
        const Trajectory tr = integrate(sys, rb_state(kM0), 0.05, 1.0, cfg, {0});
        CHECK(max_site_angle(tr.final_state, ref) < 1e-5);
        CHECK(tr.max_norm_dev < 1e-14);
    }
}

TEST_CASE("sy4 reaches fourth order on the chain model") {
    SphereField m0 = llg_profile_state(8, 0.6);
    LlgParams p;
    p.h_app = {5.0, 0.0, 0.0};
    p.lambda = 0.05;
    p.exchange_coeff = m0.spacing * m0.spacing;  // unit stencil factor, dt |A| stays small
    const LlgSystem sys(p, 8);
    const double t_final = 0.4;
    const SphereField ref =
        integrate(sys, m0, 1e-4, t_final, make_cfg(Scheme::rkmk4), {0}).final_state;
    for (GeneratorVariant v : {GeneratorVariant::default_gen, GeneratorVariant::orthogonal}) {
        SchemeConfig cfg = make_cfg(Scheme::sy4);
        cfg.variant = v;
        auto err = [&](double dt) {
            const Trajectory tr = integrate(sys, m0, dt, t_final, cfg, {0});
            CHECK(tr.max_norm_dev < 1e-13);
            return max_site_angle(tr.final_state, ref);
        };
        const double r = err(0.05) / err(0.025);
        CHECK(r == doctest::Approx(16.0).epsilon(0.5));
    }
}
