#include "s2flow/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "s2flow/errors.hpp"
#include "s2flow/kernels/kernels.hpp"

namespace s2flow {

bool is_geometric(Scheme s) {
    switch (s) {
        case Scheme::euler_fwd:
        case Scheme::euler_impl:
        case Scheme::heun:
        case Scheme::rkmk4:
        case Scheme::sy4:
            return true;
        default:
            return false;
    }
}

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::euler_fwd: return "euler_fwd";
        case Scheme::euler_impl: return "euler_impl";
        case Scheme::heun: return "heun";
        case Scheme::rkmk4: return "rkmk4";
        case Scheme::sy4: return "sy4";
        case Scheme::classical_euler: return "classical_euler";
        case Scheme::classical_heun: return "classical_heun";
        case Scheme::classical_rk4: return "classical_rk4";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    for (Scheme s : {Scheme::euler_fwd, Scheme::euler_impl, Scheme::heun, Scheme::rkmk4,
                     Scheme::sy4, Scheme::classical_euler, Scheme::classical_heun,
                     Scheme::classical_rk4})
        if (name == scheme_name(s)) return s;
    throw config_error("unknown scheme: " + name);
}

namespace {

kernels::ConstView3 view(const GeneratorField& f) { return {f.x.data(), f.y.data(), f.z.data()}; }
kernels::View3 mut_view(GeneratorField& f) { return {f.x.data(), f.y.data(), f.z.data()}; }

void scale_to(const GeneratorField& in, double s, GeneratorField& out) {
    const std::size_t n = in.size();
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.x[i] = s * in.x[i];
        out.y[i] = s * in.y[i];
        out.z[i] = s * in.z[i];
    }
}

void dcay_inv_fields(const GeneratorField& f, const GeneratorField& v, GeneratorField& out) {
    out.resize(v.size());
    kernels::dcay_inv_field(view(f), view(v), mut_view(out), v.size());
}

double iterate_residual(const GeneratorField& a, const GeneratorField& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        r = std::max(r, std::abs(a.x[i] - b.x[i]));
        r = std::max(r, std::abs(a.y[i] - b.y[i]));
        r = std::max(r, std::abs(a.z[i] - b.z[i]));
    }
    return r;
}

bool state_finite(const SphereField& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (!all_finite(m.get(i))) return false;
    return true;
}

}  // namespace

Stepper::Stepper(const System& sys, const SchemeConfig& cfg) : sys_(sys), cfg_(cfg) {
    if (cfg.scheme == Scheme::sy4) {
        if (!sys.has_flow_derivatives())
            throw config_error("sy4 needs generator flow derivatives from the system");
        if (!cfg.sigma.is_zero())
            throw config_error("sy4 does not take a sigma policy");
    }
    if (cfg.correction == Correction::dcor) {
        if (cfg.scheme != Scheme::heun)
            throw config_error("the dcor correction applies to heun only");
        if (!sys.has_heun_defect_sigma())
            throw config_error("dcor needs a Heun defect coefficient from the system");
    }
    if (cfg.sigma.kind == SigmaPolicy::Kind::analytic && !sys.has_analytic_sigma())
        throw config_error("sigma policy 'analytic' needs system support");
    if (!is_geometric(cfg.scheme) && !cfg.sigma.is_zero())
        throw config_error("classical schemes do not take a sigma policy");
}

void Stepper::eval_shifted(const SphereField& m, GeneratorField& out) {
    evaluate_generator(sys_, cfg_.variant, m, out);
    if (!sigma_.empty())
        kernels::isotropy_shift(view(out), sigma_.data(),
                                kernels::ConstView3{m.x.data(), m.y.data(), m.z.data()},
                                mut_view(out), out.size());
}

void Stepper::geometric_euler_fwd(const SphereField& m, double dt, SphereField& out) {
    eval_shifted(m, om1_);
    scale_to(om1_, dt, f_);
    apply_update(m, f_, cfg_.exp_choice, out);
}

void Stepper::geometric_euler_impl(const SphereField& m, double dt, SphereField& out,
                                   long long step_index) {
    // xi = A(Exp(dt xi) M), damped fixed point from xi0 = A(M)
    evaluate_generator(sys_, cfg_.variant, m, om1_);
    double alpha = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int it = 0; it < cfg_.impl_max_iters; ++it) {
        scale_to(om1_, dt, f_);
        apply_update(m, f_, cfg_.exp_choice, p_);
        evaluate_generator(sys_, cfg_.variant, p_, om2_);
        const double res = iterate_residual(om2_, om1_);
        if (res > prev) alpha = std::max(0.5 * alpha, 0.0625);
        prev = res;
        if (alpha == 1.0) {
            std::swap(om1_, om2_);
        } else {
            for (std::size_t i = 0; i < om1_.size(); ++i) {
                om1_.x[i] = (1.0 - alpha) * om1_.x[i] + alpha * om2_.x[i];
                om1_.y[i] = (1.0 - alpha) * om1_.y[i] + alpha * om2_.y[i];
                om1_.z[i] = (1.0 - alpha) * om1_.z[i] + alpha * om2_.z[i];
            }
        }
        if (res <= cfg_.impl_tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw numerical_error("implicit Euler fixed point did not converge", step_index);
    if (!sigma_.empty())
        kernels::isotropy_shift(view(om1_), sigma_.data(),
                                kernels::ConstView3{m.x.data(), m.y.data(), m.z.data()},
                                mut_view(om1_), om1_.size());
    scale_to(om1_, dt, f_);
    apply_update(m, f_, cfg_.exp_choice, out);
}

void Stepper::geometric_heun(const SphereField& m, double dt, SphereField& out) {
    const std::size_t n = m.size();
    eval_shifted(m, om1_);
    scale_to(om1_, dt, f_);
    apply_update(m, f_, cfg_.exp_choice, p_);
    eval_shifted(p_, om2_);
    f_.resize(n);
    const double hdt = 0.5 * dt;
    for (std::size_t i = 0; i < n; ++i) {
        f_.x[i] = hdt * (om1_.x[i] + om2_.x[i]);
        f_.y[i] = hdt * (om1_.y[i] + om2_.y[i]);
        f_.z[i] = hdt * (om1_.z[i] + om2_.z[i]);
    }
    if (cfg_.correction == Correction::dcor) {
        sys_.heun_defect_sigma(m, defect_);
        const double dt3 = dt * dt * dt;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = dt3 * defect_[i];
            f_.x[i] += c * m.x[i];
            f_.y[i] += c * m.y[i];
            f_.z[i] += c * m.z[i];
        }
    }
    apply_update(m, f_, cfg_.exp_choice, out);
}

void Stepper::geometric_rkmk4(const SphereField& m, double dt, SphereField& out) {
    // Conventional RK4 applied to the reconstruction ODE
    //   f' = dcay_f^{-1}( dt A(cay(f) M) ),  f(0) = 0,
    // so each stage probes along the transported increment of the previous one.
    const std::size_t n = m.size();
    eval_shifted(m, om1_);
    scale_to(om1_, dt, s1_);                       // F1
    scale_to(s1_, 0.5, f_);
    apply_update(m, f_, ExpChoice::cay, p_);
    eval_shifted(p_, om2_);
    scale_to(om2_, dt, s2_);
    dcay_inv_fields(f_, s2_, s2_);                 // F2
    scale_to(s2_, 0.5, f_);
    apply_update(m, f_, ExpChoice::cay, p_);
    eval_shifted(p_, om2_);
    scale_to(om2_, dt, s3_);
    dcay_inv_fields(f_, s3_, s3_);                 // F3
    apply_update(m, s3_, ExpChoice::cay, p_);
    eval_shifted(p_, om2_);
    scale_to(om2_, dt, s4_);
    dcay_inv_fields(s3_, s4_, s4_);                // F4
    f_.resize(n);
    const double sixth = 1.0 / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        f_.x[i] = sixth * ((s1_.x[i] + 2.0 * s2_.x[i]) + (2.0 * s3_.x[i] + s4_.x[i]));
        f_.y[i] = sixth * ((s1_.y[i] + 2.0 * s2_.y[i]) + (2.0 * s3_.y[i] + s4_.y[i]));
        f_.z[i] = sixth * ((s1_.z[i] + 2.0 * s2_.z[i]) + (2.0 * s3_.z[i] + s4_.z[i]));
    }
    apply_update(m, f_, ExpChoice::cay, out);
}

void Stepper::geometric_sy4(const SphereField& m, double dt, SphereField& out) {
    std::array<GeneratorField, 4> d;
    sys_.flow_derivatives(m, cfg_.variant, d);
    const std::size_t n = m.size();
    f_.resize(n);
    const double dt2 = dt * dt, dt3 = dt2 * dt, dt4 = dt3 * dt;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 a0 = d[0].get(i), a1 = d[1].get(i), a2 = d[2].get(i), a3 = d[3].get(i);
        const Vec3 mi = m.get(i);
        Vec3 F = dt * a0 + (dt2 / 2.0) * a1 + (dt3 / 6.0) * a2 + (dt4 / 24.0) * a3;
        if (cfg_.variant == GeneratorVariant::default_gen) {
            F += (dt3 / 12.0) * (norm2(a0) * a0 + cross(a1, a0));
            F += (dt4 / 24.0) * (norm2(a0) * a1 + cross(a2, a0) + (2.0 * dot(a1, a0)) * a0);
        } else {
            F += (dt3 / 12.0) * (norm2(a0) * a0 + dot(a2, mi) * mi);
            F += (dt4 / 8.0) * (dot(a1, a0) * a0);
        }
        f_.set(i, F);
    }
    apply_update(m, f_, ExpChoice::cay, out);
}

void Stepper::classical(const SphereField& m, double dt, SphereField& out) {
    const std::size_t n = m.size();
    auto resize_out = [&](SphereField& s) {
        s.x.resize(n);
        s.y.resize(n);
        s.z.resize(n);
        s.spacing = m.spacing;
    };
    sys_.ambient_rhs(m, s1_);
    if (cfg_.scheme == Scheme::classical_euler) {
        resize_out(out);
        for (std::size_t i = 0; i < n; ++i) out.set(i, m.get(i) + dt * s1_.get(i));
        return;
    }
    if (cfg_.scheme == Scheme::classical_heun) {
        resize_out(p_);
        for (std::size_t i = 0; i < n; ++i) p_.set(i, m.get(i) + dt * s1_.get(i));
        sys_.ambient_rhs(p_, s2_);
        resize_out(out);
        const double hdt = 0.5 * dt;
        for (std::size_t i = 0; i < n; ++i)
            out.set(i, m.get(i) + hdt * (s1_.get(i) + s2_.get(i)));
        return;
    }
    // classical_rk4
    resize_out(p_);
    const double hdt = 0.5 * dt;
    for (std::size_t i = 0; i < n; ++i) p_.set(i, m.get(i) + hdt * s1_.get(i));
    sys_.ambient_rhs(p_, s2_);
    for (std::size_t i = 0; i < n; ++i) p_.set(i, m.get(i) + hdt * s2_.get(i));
    sys_.ambient_rhs(p_, s3_);
    for (std::size_t i = 0; i < n; ++i) p_.set(i, m.get(i) + dt * s3_.get(i));
    sys_.ambient_rhs(p_, s4_);
    resize_out(out);
    const double sdt = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i)
        out.set(i, m.get(i) + sdt * (s1_.get(i) + 2.0 * s2_.get(i) + 2.0 * s3_.get(i) +
                                     s4_.get(i)));
}

void Stepper::step(const SphereField& m, double dt, SphereField& out, long long step_index) {
    if (is_geometric(cfg_.scheme) && cfg_.scheme != Scheme::sy4 && !cfg_.sigma.is_zero())
        evaluate_sigma(cfg_.sigma, sys_, cfg_.variant, m, dt, sigma_);
    else
        sigma_.clear();
    switch (cfg_.scheme) {
        case Scheme::euler_fwd: geometric_euler_fwd(m, dt, out); return;
        case Scheme::euler_impl: geometric_euler_impl(m, dt, out, step_index); return;
        case Scheme::heun: geometric_heun(m, dt, out); return;
        case Scheme::rkmk4: geometric_rkmk4(m, dt, out); return;
        case Scheme::sy4: geometric_sy4(m, dt, out); return;
        default: classical(m, dt, out); return;
    }
}

long long step_count(double t_final, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw config_error("dt must be positive");
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw config_error("bad t_final");
    if (t_final < dt) return 0;
    const double q = t_final / dt;
    return static_cast<long long>(std::ceil(q - 1e-9 * std::max(1.0, q)));
}

Trajectory integrate(const System& sys, const SphereField& m0, double dt, double t_final,
                     const SchemeConfig& cfg, const IntegrateOptions& opt) {
    if (m0.size() != sys.size()) throw config_error("initial state size mismatch");
    const long long n = step_count(t_final, dt);
    Trajectory traj;
    traj.n_steps = n;
    traj.t_final = static_cast<double>(n) * dt;
    const bool has_energy = sys.energy(m0).has_value();
    const double e0 = has_energy ? *sys.energy(m0) : 0.0;

    auto record = [&](long long k, const SphereField& s) {
        traj.times.push_back(static_cast<double>(k) * dt);
        traj.states.push_back(s);
        traj.norm_dev.push_back(max_norm_deviation(s));
        if (has_energy) traj.energy.push_back(*sys.energy(s));
    };

    record(0, m0);
    Stepper stepper(sys, cfg);
    SphereField cur = m0, next;
    for (long long k = 1; k <= n; ++k) {
        stepper.step(cur, dt, next, k);
        std::swap(cur, next);
        if (opt.check_finite && !state_finite(cur))
            throw numerical_error("non-finite state", k);
        traj.max_norm_dev = std::max(traj.max_norm_dev, max_norm_deviation(cur));
        if (has_energy)
            traj.max_energy_err =
                std::max(traj.max_energy_err, std::abs(*sys.energy(cur) - e0));
        if (opt.track_site >= 0 && !stepper.last_sigma().empty())
            traj.sigma_track.push_back(
                stepper.last_sigma()[static_cast<std::size_t>(opt.track_site)]);
        const bool last = (k == n);
        if (!last && opt.record_stride > 0 && k % opt.record_stride == 0) record(k, cur);
        if (last) record(k, cur);
    }
    traj.final_state = cur;
    return traj;
}

SphereField step_once(const System& sys, const SphereField& m, double dt,
                      const SchemeConfig& cfg) {
    Stepper stepper(sys, cfg);
    SphereField out;
    stepper.step(m, dt, out, 0);
    return out;
}

}  // namespace s2flow
