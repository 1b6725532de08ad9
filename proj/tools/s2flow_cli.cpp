// Command line front end: rigid-body energy tables and separatrix runs, spin
// chain trajectories, convergence fits, sigma sweeps, and norm-drift series.
// Every experiment writes CSV files into --out; presets/*.cfg hold the
// checked-in configurations (load with --preset, any flag overrides).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "s2flow/csv.hpp"
#include "s2flow/errors.hpp"
#include "s2flow/experiments.hpp"
#include "s2flow/harness.hpp"
#include "s2flow/llg.hpp"
#include "s2flow/rigid_body.hpp"
#include "s2flow/rng.hpp"

using namespace s2flow;
namespace ex = s2flow::experiments;

namespace {

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw config_error(std::string(what) + ": cannot parse '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw config_error(std::string(what) + ": empty list");
    return out;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        out.push_back(text.substr(pos, comma == std::string::npos ? comma : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

Vec3 parse_vec3(const std::string& text, const char* what) {
    const std::vector<double> v = parse_list(text, what);
    if (v.size() != 3) throw config_error(std::string(what) + ": need three components");
    return {v[0], v[1], v[2]};
}

SigmaPolicy parse_sigma(const std::string& text) {
    if (text == "zero") return SigmaPolicy::zero();
    if (text == "curvature") return SigmaPolicy::curvature();
    if (text == "curvature-centered") return SigmaPolicy::curvature(true);
    if (text == "error-min") return SigmaPolicy::error_min();
    if (text == "analytic") return SigmaPolicy::analytic();
    if (text.rfind("const:", 0) == 0)
        return SigmaPolicy::constant(parse_list(text.substr(6), "sigma constant")[0]);
    throw config_error("unknown sigma policy: " + text);
}

GeneratorVariant parse_generator(const std::string& text) {
    if (text == "default") return GeneratorVariant::default_gen;
    if (text == "orthogonal") return GeneratorVariant::orthogonal;
    throw config_error("unknown generator: " + text);
}

ExpChoice parse_exp(const std::string& text) {
    if (text == "cay") return ExpChoice::cay;
    if (text == "exp") return ExpChoice::exp;
    throw config_error("unknown exponential: " + text);
}

Correction parse_correction(const std::string& text) {
    if (text == "none") return Correction::none;
    if (text == "dcor") return Correction::dcor;
    throw config_error("unknown correction: " + text);
}

InertiaKind parse_kind(const std::string& text) {
    if (text == "triaxial") return InertiaKind::triaxial;
    if (text == "axisymmetric") return InertiaKind::axisymmetric;
    throw config_error("unknown inertia kind: " + text);
}

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Flat key=value preset file; keys name long options of the subcommand.
// Values given on the command line win over preset values.
void apply_preset(CLI::App* cmd, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw config_error("cannot read preset: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (!opt) throw config_error(path + ":" + std::to_string(lineno) +
                                     ": no such option '--" + key + "'");
        if (opt->count() > 0) continue;
        opt->add_result(value);
        opt->run_callback();
    }
}

std::string out_file(const std::string& dir, const std::string& name) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory: " + dir);
    return (std::filesystem::path(dir) / name).string();
}

// Scheme flags shared by every subcommand that runs an integrator.
struct SchemeFlags {
    std::string scheme = "euler_fwd";
    std::string generator = "default";
    std::string sigma = "zero";
    std::string exp = "cay";
    std::string correction = "none";

    void add(CLI::App* cmd) {
        cmd->add_option("--scheme", scheme, "integration scheme");
        cmd->add_option("--generator", generator, "default|orthogonal");
        cmd->add_option("--sigma", sigma,
                        "zero|const:<c>|curvature|curvature-centered|error-min|analytic");
        cmd->add_option("--exp", exp, "cay|exp");
        cmd->add_option("--correction", correction, "none|dcor");
    }
    SchemeConfig config() const {
        SchemeConfig cfg;
        cfg.scheme = scheme_from_name(scheme);
        cfg.variant = parse_generator(generator);
        cfg.sigma = parse_sigma(sigma);
        cfg.exp_choice = parse_exp(exp);
        cfg.correction = parse_correction(correction);
        return cfg;
    }
};

// Spin chain model flags; defaults mirror the strong-field relaxation setup.
struct ChainFlags {
    std::size_t n = 100;
    double amp = 0.77;
    double jitter = 0.0;
    std::uint64_t jitter_seed = 2026;
    double stencil = 1.0;
    double mu0 = 1.0;
    double k_anis = 1.0;
    std::string easy_axis = "1,0,0";
    std::string field = "5,0,0";
    double lambda = 0.05;
    bool overdamped = false;

    void add(CLI::App* cmd) {
        cmd->add_option("--n", n, "number of spins");
        cmd->add_option("--amp", amp, "helix amplitude of the start profile");
        cmd->add_option("--jitter", jitter, "per-site random kick on the start");
        cmd->add_option("--jitter-seed", jitter_seed, "stream for the start kick");
        cmd->add_option("--stencil", stencil, "exchange strength in stencil units");
        cmd->add_option("--mu0", mu0, "field coupling constant");
        cmd->add_option("--k-anis", k_anis, "uniaxial anisotropy constant");
        cmd->add_option("--easy-axis", easy_axis, "anisotropy axis x,y,z");
        cmd->add_option("--field", field, "applied field x,y,z");
        cmd->add_option("--lambda", lambda, "damping strength");
        cmd->add_flag("--overdamped", overdamped, "drop the precession term");
    }
    ex::ChainSpec spec() const {
        ex::ChainSpec s;
        s.n = n;
        s.profile_amp = amp;
        s.jitter = jitter;
        s.jitter_seed = jitter_seed;
        s.stencil_factor = stencil;
        s.mu0 = mu0;
        s.k_anis = k_anis;
        s.easy_axis = normalized(parse_vec3(easy_axis, "easy axis"));
        s.h_app = parse_vec3(field, "applied field");
        s.lambda = lambda;
        s.precession = !overdamped;
        return s;
    }
};

struct RbFlags {
    std::string inertia = "1,2,4";
    std::string m0;

    void add(CLI::App* cmd) {
        cmd->add_option("--inertia", inertia, "principal moments i1,i2,i3");
        cmd->add_option("--m0", m0, "initial momentum x,y,z (default: reference point)");
    }
    InertiaTensor body() const {
        const std::vector<double> v = parse_list(inertia, "inertia");
        if (v.size() != 3) throw config_error("inertia: need three moments");
        return {v[0], v[1], v[2]};
    }
    Vec3 start() const {
        if (m0.empty()) return ex::rb_reference_start();
        return normalized(parse_vec3(m0, "m0"));
    }
};

// ---- rigid-body table -------------------------------------------------------

struct TableArgs {
    std::string preset;
    std::string family = "euler";
    std::string kind = "triaxial";
    std::string dt;
    double t_final = ex::kTableTFinal;
    int ensemble = ex::kTableEnsemble;
    std::uint64_t seed = ex::kTableSeed;
    bool trajectories = false;
    long long stride = 0;
    std::string out = "out";
};

void run_table(const TableArgs& a) {
    RigidEnsembleSpec spec = ex::table_spec(a.family, parse_kind(a.kind), a.ensemble, a.seed);
    spec.t_final = a.t_final;
    if (!a.dt.empty()) spec.dts = parse_list(a.dt, "dt");
    const std::vector<EnergyCell> cells = run_rigid_energy_table(spec);
    write_energy_table_csv(out_file(a.out, "energy_table.csv"), cells);
    for (const EnergyCell& c : cells)
        std::printf("%-12s dt=%-8g mean_energy_err=%.6e%s\n", c.scheme.c_str(), c.dt,
                    c.mean_err, c.failures ? " (failures)" : "");
    if (a.trajectories) {
        Rng rng(derive_seed(spec.seed, 0));
        const InertiaTensor body = rb_random_inertia(spec.kind, rng);
        const SphereField m0 = rb_state(rng.unit_vector());
        const RigidBodySystem sys(body);
        IntegrateOptions opt;
        opt.record_stride = a.stride;
        for (const LabeledScheme& ls : spec.schemes) {
            const Trajectory tr =
                integrate(sys, m0, spec.dts.back(), spec.t_final, ls.cfg, opt);
            write_trajectory_csv(out_file(a.out, "trajectory_" + ls.label + ".csv"), tr);
        }
    }
}

// ---- rigid-body separatrix ----------------------------------------------------

struct SeparatrixArgs {
    std::string preset;
    std::string inertia = "3,6,12";
    int branch = ex::kSeparatrixBranch;
    double phase = ex::kSeparatrixPhase;
    std::string dt;
    double t_final = ex::kSeparatrixTFinal;
    int ensemble = 1;
    std::uint64_t seed = 1;
    std::string out = "out";
};

void run_separatrix(const SeparatrixArgs& a) {
    const std::vector<double> dts =
        a.dt.empty() ? std::vector<double>{ex::kSeparatrixDt} : parse_list(a.dt, "dt");
    if (a.ensemble < 1) throw config_error("ensemble needs at least one member");
    const std::vector<LabeledScheme> schemes = ex::separatrix_family();
    std::vector<EnergyCell> cells;
    for (const LabeledScheme& ls : schemes) {
        for (double dt : dts) {
            EnergyCell cell;
            cell.scheme = ls.label;
            cell.dt = dt;
            double sum = 0.0;
            int ok = 0;
            for (int i = 0; i < a.ensemble; ++i) {
                InertiaTensor body{0, 0, 0};
                double phase = a.phase;
                int branch = a.branch;
                if (a.ensemble == 1) {
                    const std::vector<double> v = parse_list(a.inertia, "inertia");
                    if (v.size() != 3) throw config_error("inertia: need three moments");
                    body = {v[0], v[1], v[2]};
                } else {
                    Rng rng(derive_seed(a.seed, static_cast<std::uint64_t>(i)));
                    body = rb_random_inertia(InertiaKind::triaxial, rng);
                    branch = static_cast<int>(rng.next_u64() & 1);
                    phase = rng.uniform(0.0, 2.0 * M_PI);
                }
                const SphereField m0 = rb_state(rb_separatrix_point(body, branch, phase));
                const RigidBodySystem sys(body);
                try {
                    sum += integrate(sys, m0, dt, a.t_final, ls.cfg, {0}).max_energy_err;
                    ++ok;
                } catch (const numerical_error&) {
                    ++cell.failures;
                }
            }
            cell.mean_err = ok ? sum / ok : std::numeric_limits<double>::quiet_NaN();
            cells.push_back(cell);
        }
    }
    write_energy_table_csv(out_file(a.out, "energy_table.csv"), cells);
    for (const EnergyCell& c : cells)
        std::printf("%-12s dt=%-8g mean_energy_err=%.6e%s\n", c.scheme.c_str(), c.dt,
                    c.mean_err, c.failures ? " (failures)" : "");
}

// ---- llg run -----------------------------------------------------------------

struct LlgRunArgs {
    std::string preset;
    ChainFlags chain;
    SchemeFlags scheme;
    std::string dt = "0.01";
    double t_final = ex::kRelaxTFinal;
    long long stride = 0;
    int track_site = -1;
    std::string baseline;
    double baseline_dt = ex::kBaselineDt;
    std::string out = "out";
};

void run_llg(const LlgRunArgs& a) {
    const ex::ChainSpec spec = a.chain.spec();
    const LlgSystem sys(ex::chain_params(spec), spec.n);
    const SphereField m0 = ex::chain_start(spec);
    const double dt = parse_list(a.dt, "dt")[0];
    IntegrateOptions opt;
    opt.record_stride = a.stride;
    opt.track_site = a.track_site;
    const Trajectory tr = integrate(sys, m0, dt, a.t_final, a.scheme.config(), opt);
    write_trajectory_csv(out_file(a.out, "trajectory.csv"), tr);
    if (a.track_site >= 0)
        write_sigma_track_csv(out_file(a.out, "sigma_track.csv"), tr, dt);
    std::printf("%s dt=%g t_final=%g max_norm_dev=%.3e\n", a.scheme.scheme.c_str(), dt,
                tr.t_final, tr.max_norm_dev);
    if (!a.baseline.empty()) {
        SchemeConfig base;
        base.scheme = scheme_from_name(a.baseline);
        IntegrateOptions bopt;
        bopt.record_stride =
            a.stride > 0 ? static_cast<long long>(
                               std::llround(a.stride * dt / a.baseline_dt))
                         : 0;
        const Trajectory btr = integrate(sys, m0, a.baseline_dt, a.t_final, base, bopt);
        write_trajectory_csv(out_file(a.out, "baseline_trajectory.csv"), btr);
        double worst = 0.0;
        for (std::size_t j = 0; j < btr.final_state.size(); ++j)
            worst = std::max(worst, norm(btr.final_state.get(j)));
        std::printf("%s dt=%g max_norm_dev=%.3e terminal_norm=%.9f final_gap=%.3e\n",
                    a.baseline.c_str(), a.baseline_dt, btr.max_norm_dev, worst,
                    max_site_angle(tr.final_state, btr.final_state));
    }
}

// ---- convergence ---------------------------------------------------------------

struct ConvergenceArgs {
    std::string preset;
    std::string system = "llg";
    ChainFlags chain;
    RbFlags rb;
    SchemeFlags scheme;
    std::string dt;
    double t_final = ex::kConvergenceTFinal;
    std::string out = "out";
};

void run_convergence_cmd(const ConvergenceArgs& a) {
    if (a.dt.empty()) throw config_error("convergence needs --dt");
    const std::vector<double> dts = parse_list(a.dt, "dt");
    ConvergenceReport rep;
    if (a.system == "llg") {
        const ex::ChainSpec spec = a.chain.spec();
        const LlgSystem sys(ex::chain_params(spec), spec.n);
        rep = run_convergence(sys, ex::chain_start(spec), a.scheme.config(), dts, a.t_final);
    } else if (a.system == "rigid-body") {
        const RigidBodySystem sys(a.rb.body());
        rep = run_convergence(sys, rb_state(a.rb.start()), a.scheme.config(), dts, a.t_final);
    } else {
        throw config_error("unknown system: " + a.system);
    }
    write_convergence_csv(out_file(a.out, "convergence.csv"), rep);
    write_fit_csv(out_file(a.out, "fit.csv"), rep.fit);
    std::printf("%s slope=%.3f r2=%.5f%s\n", a.scheme.scheme.c_str(), rep.fit.slope,
                rep.fit.r2, rep.fit.reliable ? "" : " (unreliable fit)");
}

// ---- sigma-sweep ----------------------------------------------------------------

struct SweepArgs {
    std::string preset;
    std::string system = "llg";
    ChainFlags chain;
    RbFlags rb;
    SchemeFlags scheme;
    std::string sigmas;
    std::string dt;
    double t_final = ex::kConvergenceTFinal;
    std::string out = "out";
};

void run_sweep(const SweepArgs& a) {
    if (a.dt.empty()) throw config_error("sigma-sweep needs --dt");
    if (a.sigmas.empty()) throw config_error("sigma-sweep needs --sigmas");
    const std::vector<double> dts = parse_list(a.dt, "dt");
    const std::vector<double> sigmas = parse_list(a.sigmas, "sigmas");
    SchemeConfig base = a.scheme.config();
    std::vector<SigmaSweepPoint> pts;
    if (a.system == "llg") {
        const ex::ChainSpec spec = a.chain.spec();
        const LlgSystem sys(ex::chain_params(spec), spec.n);
        pts = run_sigma_sweep(sys, ex::chain_start(spec), base, sigmas, dts, a.t_final);
    } else if (a.system == "rigid-body") {
        const RigidBodySystem sys(a.rb.body());
        pts = run_sigma_sweep(sys, rb_state(a.rb.start()), base, sigmas, dts, a.t_final);
    } else {
        throw config_error("unknown system: " + a.system);
    }
    write_sigma_sweep_csv(out_file(a.out, "sigma_sweep.csv"), pts);
    for (const SigmaSweepPoint& p : pts)
        std::printf("sigma=%-6g slope=%.3f r2=%.5f%s\n", p.sigma, p.report.fit.slope,
                    p.report.fit.r2, p.report.fit.reliable ? "" : " (unreliable fit)");
}

// ---- norm-drift -----------------------------------------------------------------

struct DriftArgs {
    std::string preset;
    std::string system = "llg";
    ChainFlags chain;
    RbFlags rb;
    std::string scheme = "euler_fwd";
    std::string generator = "default";
    std::string sigma = "zero";
    std::string dt = "0.01";
    double t_final = ex::kDriftTFinal;
    long long stride = 1;
    std::string out = "out";
};

void run_drift(const DriftArgs& a) {
    const std::vector<std::string> names = split_names(a.scheme);
    std::vector<double> dts = parse_list(a.dt, "dt");
    if (dts.size() == 1) dts.assign(names.size(), dts[0]);
    if (dts.size() != names.size())
        throw config_error("norm-drift needs one dt per scheme (or a single shared one)");
    std::vector<NormDriftSeries> series;
    for (std::size_t i = 0; i < names.size(); ++i) {
        SchemeConfig cfg;
        cfg.scheme = scheme_from_name(names[i]);
        cfg.variant = parse_generator(a.generator);
        cfg.sigma = parse_sigma(a.sigma);
        NormDriftSeries s;
        if (a.system == "llg") {
            const ex::ChainSpec spec = a.chain.spec();
            const LlgSystem sys(ex::chain_params(spec), spec.n);
            s = run_norm_drift(sys, ex::chain_start(spec), cfg, dts[i], a.t_final, a.stride,
                               names[i]);
        } else if (a.system == "rigid-body") {
            const RigidBodySystem sys(a.rb.body());
            s = run_norm_drift(sys, rb_state(a.rb.start()), cfg, dts[i], a.t_final, a.stride,
                               names[i]);
        } else {
            throw config_error("unknown system: " + a.system);
        }
        std::printf("%-16s dt=%-8g max_drift=%.3e terminal_norm=%.9f\n", names[i].c_str(),
                    dts[i], *std::max_element(s.drift.begin(), s.drift.end()),
                    s.terminal_ratio);
        series.push_back(std::move(s));
    }
    write_norm_drift_csv(out_file(a.out, "norm_drift.csv"), series);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structure-preserving integrators on products of unit spheres"};
    app.require_subcommand(1);

    CLI::App* rb = app.add_subcommand("rigid-body", "reduced rigid body experiments");
    rb->require_subcommand(1);

    TableArgs table;
    CLI::App* tcmd = rb->add_subcommand("table", "ensemble energy-error table");
    tcmd->add_option("--preset", table.preset, "preset file with key=value lines");
    tcmd->add_option("--family", table.family, "euler|heun|fourth");
    tcmd->add_option("--kind", table.kind, "triaxial|axisymmetric");
    tcmd->add_option("--dt", table.dt, "comma list of step sizes");
    tcmd->add_option("--t-final", table.t_final, "integration horizon");
    tcmd->add_option("--ensemble", table.ensemble, "number of random instances");
    tcmd->add_option("--seed", table.seed, "master seed");
    tcmd->add_flag("--trajectories", table.trajectories,
                   "also write member-0 trajectories at the smallest dt");
    tcmd->add_option("--stride", table.stride, "trajectory record stride (0: ends only)");
    tcmd->add_option("--out", table.out, "output directory");
    tcmd->callback([&] {
        apply_preset(tcmd, table.preset);
        run_table(table);
    });

    SeparatrixArgs sep;
    CLI::App* scmd = rb->add_subcommand("separatrix", "energy error along separatrix starts");
    scmd->add_option("--preset", sep.preset, "preset file with key=value lines");
    scmd->add_option("--inertia", sep.inertia, "principal moments i1,i2,i3");
    scmd->add_option("--branch", sep.branch, "separatrix branch, 0 or 1");
    scmd->add_option("--phase", sep.phase, "position along the branch");
    scmd->add_option("--dt", sep.dt, "comma list of step sizes");
    scmd->add_option("--t-final", sep.t_final, "integration horizon");
    scmd->add_option("--ensemble", sep.ensemble,
                     "random bodies and phases instead of the fixed ones");
    scmd->add_option("--seed", sep.seed, "master seed for ensemble mode");
    scmd->add_option("--out", sep.out, "output directory");
    scmd->callback([&] {
        apply_preset(scmd, sep.preset);
        run_separatrix(sep);
    });

    LlgRunArgs llg;
    CLI::App* lcmd = app.add_subcommand("llg", "spin chain experiments");
    lcmd->require_subcommand(1);
    CLI::App* lrun = lcmd->add_subcommand("run", "integrate one chain trajectory");
    lrun->add_option("--preset", llg.preset, "preset file with key=value lines");
    llg.chain.add(lrun);
    llg.scheme.add(lrun);
    lrun->add_option("--dt", llg.dt, "step size");
    lrun->add_option("--t-final", llg.t_final, "integration horizon");
    lrun->add_option("--stride", llg.stride, "record stride (0: ends only)");
    lrun->add_option("--track-site", llg.track_site,
                     "emit the per-step shift estimate at this site");
    lrun->add_option("--baseline", llg.baseline,
                     "also run a classical scheme for comparison");
    lrun->add_option("--baseline-dt", llg.baseline_dt, "step size for the baseline");
    lrun->add_option("--out", llg.out, "output directory");
    lrun->callback([&] {
        apply_preset(lrun, llg.preset);
        run_llg(llg);
    });

    ConvergenceArgs conv;
    CLI::App* ccmd = app.add_subcommand("convergence", "fitted order against a fine reference");
    ccmd->add_option("--preset", conv.preset, "preset file with key=value lines");
    ccmd->add_option("--system", conv.system, "llg|rigid-body");
    conv.chain.add(ccmd);
    conv.rb.add(ccmd);
    conv.scheme.add(ccmd);
    ccmd->add_option("--dt", conv.dt, "comma list of step sizes, descending");
    ccmd->add_option("--t-final", conv.t_final, "integration horizon");
    ccmd->add_option("--out", conv.out, "output directory");
    ccmd->callback([&] {
        apply_preset(ccmd, conv.preset);
        run_convergence_cmd(conv);
    });

    SweepArgs sweep;
    CLI::App* wcmd = app.add_subcommand("sigma-sweep", "fitted order per constant shift");
    wcmd->add_option("--preset", sweep.preset, "preset file with key=value lines");
    wcmd->add_option("--system", sweep.system, "llg|rigid-body");
    sweep.chain.add(wcmd);
    sweep.rb.add(wcmd);
    sweep.scheme.add(wcmd);
    wcmd->add_option("--sigmas", sweep.sigmas, "comma list of shift values");
    wcmd->add_option("--dt", sweep.dt, "comma list of step sizes, descending");
    wcmd->add_option("--t-final", sweep.t_final, "integration horizon");
    wcmd->add_option("--out", sweep.out, "output directory");
    wcmd->callback([&] {
        apply_preset(wcmd, sweep.preset);
        run_sweep(sweep);
    });

    DriftArgs drift;
    CLI::App* dcmd = app.add_subcommand("norm-drift", "site-norm deviation over time");
    dcmd->add_option("--preset", drift.preset, "preset file with key=value lines");
    dcmd->add_option("--system", drift.system, "llg|rigid-body");
    drift.chain.add(dcmd);
    drift.rb.add(dcmd);
    dcmd->add_option("--scheme", drift.scheme, "comma list of schemes");
    dcmd->add_option("--generator", drift.generator, "default|orthogonal");
    dcmd->add_option("--sigma", drift.sigma, "shift policy for geometric schemes");
    dcmd->add_option("--dt", drift.dt, "one step size per scheme, or one shared");
    dcmd->add_option("--t-final", drift.t_final, "integration horizon");
    dcmd->add_option("--stride", drift.stride, "record stride (0: ends only)");
    dcmd->add_option("--out", drift.out, "output directory");
    dcmd->callback([&] {
        apply_preset(dcmd, drift.preset);
        run_drift(drift);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const numerical_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    }
    return 0;
}
