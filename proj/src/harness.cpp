#include "s2flow/harness.hpp"

#include <cmath>
#include <limits>

#include "s2flow/csv.hpp"
#include "s2flow/errors.hpp"
#include "s2flow/rng.hpp"

namespace s2flow {

namespace {

void validate_dts(const std::vector<double>& dts, std::size_t min_count) {
    if (dts.size() < min_count)
        throw config_error("dt list needs at least " + std::to_string(min_count) + " values");
    for (std::size_t i = 0; i < dts.size(); ++i) {
        if (!(dts[i] > 0.0)) throw config_error("dt values must be positive");
        if (i && !(dts[i] < dts[i - 1])) throw config_error("dt list must be descending");
    }
}

// Endpoint comparisons only make sense when every run stops at the same
// time, so each dt has to step onto t_final exactly.
void validate_division(const std::vector<double>& dts, double t_final) {
    for (double dt : dts) {
        const double q = t_final / dt;
        if (std::abs(q - std::round(q)) > 1e-9 * std::max(1.0, q))
            throw config_error("dt must divide t_final evenly");
    }
}

const IntegrateOptions kEndsOnly{0, -1, true};

}  // namespace

FitResult fit_loglog(const std::vector<double>& dts, const std::vector<double>& errs) {
    if (dts.size() != errs.size()) throw config_error("fit needs matching dt and error lists");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < dts.size(); ++i) {
        if (!(dts[i] > 0.0) || !(errs[i] > 0.0) || !std::isfinite(errs[i])) continue;
        lx.push_back(std::log10(dts[i]));
        ly.push_back(std::log10(errs[i]));
    }
    FitResult fit;
    if (lx.size() < 3) {
        fit.slope = fit.intercept = std::numeric_limits<double>::quiet_NaN();
        return fit;
    }
    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssres = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ssres += r * r;
    }
    fit.r2 = syy > 0.0 ? 1.0 - ssres / syy : (ssres > 0.0 ? 0.0 : 1.0);
    fit.reliable = fit.r2 >= kFitR2Threshold;
    return fit;
}

SphereField convergence_reference(const System& sys, const SphereField& m0, double dt_min,
                                  double t_final) {
    if (!(dt_min > 0.0)) throw config_error("reference needs a positive dt");
    SchemeConfig ref;
    ref.scheme = Scheme::rkmk4;
    return integrate(sys, m0, dt_min / 100.0, t_final, ref, kEndsOnly).final_state;
}

ConvergenceReport convergence_against(const System& sys, const SphereField& m0,
                                      const SchemeConfig& cfg, const std::vector<double>& dts,
                                      double t_final, const SphereField& ref) {
    validate_dts(dts, 3);
    validate_division(dts, t_final);
    ConvergenceReport rep;
    std::vector<double> errs;
    for (double dt : dts) {
        const Trajectory tr = integrate(sys, m0, dt, t_final, cfg, kEndsOnly);
        const double err = max_site_angle(tr.final_state, ref);
        rep.points.push_back({dt, err});
        errs.push_back(err);
    }
    rep.fit = fit_loglog(dts, errs);
    return rep;
}

ConvergenceReport run_convergence(const System& sys, const SphereField& m0,
                                  const SchemeConfig& cfg, const std::vector<double>& dts,
                                  double t_final) {
    validate_dts(dts, 3);
    const SphereField ref = convergence_reference(sys, m0, dts.back(), t_final);
    return convergence_against(sys, m0, cfg, dts, t_final, ref);
}

std::vector<SigmaSweepPoint> run_sigma_sweep(const System& sys, const SphereField& m0,
                                             const SchemeConfig& base,
                                             const std::vector<double>& sigmas,
                                             const std::vector<double>& dts, double t_final) {
    if (base.scheme != Scheme::heun && base.scheme != Scheme::rkmk4)
        throw config_error("sigma sweep runs the second or fourth order scheme");
    if (sigmas.empty()) throw config_error("sigma sweep needs at least one value");
    validate_dts(dts, 3);
    const SphereField ref = convergence_reference(sys, m0, dts.back(), t_final);
    std::vector<SigmaSweepPoint> out;
    for (double s : sigmas) {
        SchemeConfig cfg = base;
        cfg.sigma = SigmaPolicy::constant(s);
        out.push_back({s, convergence_against(sys, m0, cfg, dts, t_final, ref)});
    }
    return out;
}

std::vector<EnergyCell> run_rigid_energy_table(const RigidEnsembleSpec& spec) {
    validate_dts(spec.dts, 1);
    if (spec.ensemble < 1) throw config_error("ensemble needs at least one member");
    if (spec.schemes.empty()) throw config_error("energy table needs at least one scheme");

    // one shared ensemble: every cell sees the same bodies and starts
    std::vector<InertiaTensor> bodies;
    std::vector<Vec3> starts;
    for (int i = 0; i < spec.ensemble; ++i) {
        Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(i)));
        bodies.push_back(rb_random_inertia(spec.kind, rng));
        starts.push_back(rng.unit_vector());
    }

    std::vector<EnergyCell> cells;
    for (const LabeledScheme& ls : spec.schemes) {
        for (double dt : spec.dts) {
            EnergyCell cell;
            cell.scheme = ls.label;
            cell.dt = dt;
            double sum = 0.0;
            int ok = 0;
            for (int i = 0; i < spec.ensemble; ++i) {
                const RigidBodySystem sys(bodies[static_cast<std::size_t>(i)]);
                try {
                    const Trajectory tr =
                        integrate(sys, rb_state(starts[static_cast<std::size_t>(i)]), dt,
                                  spec.t_final, ls.cfg, kEndsOnly);
                    sum += tr.max_energy_err;
                    ++ok;
                } catch (const numerical_error&) {
                    ++cell.failures;
                }
            }
            cell.mean_err = ok ? sum / ok : std::numeric_limits<double>::quiet_NaN();
            cells.push_back(cell);
        }
    }
    return cells;
}

NormDriftSeries run_norm_drift(const System& sys, const SphereField& m0,
                               const SchemeConfig& cfg, double dt, double t_final,
                               long long stride, const std::string& label) {
    IntegrateOptions opt;
    opt.record_stride = stride;
    const Trajectory tr = integrate(sys, m0, dt, t_final, cfg, opt);
    NormDriftSeries out;
    out.label = label;
    out.t = tr.times;
    out.drift = tr.norm_dev;
    double worst = 0.0;
    for (std::size_t j = 0; j < tr.final_state.size(); ++j)
        worst = std::max(worst, norm(tr.final_state.get(j)));
    out.terminal_ratio = worst;
    return out;
}

void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
    const bool has_energy = !tr.energy.empty();
    std::vector<std::string> header = {"t", "site", "x", "y", "z", "norm_dev"};
    if (has_energy) header.push_back("energy");
    CsvTable table(header);
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
        const SphereField& m = tr.states[k];
        for (std::size_t j = 0; j < m.size(); ++j) {
            const Vec3 v = m.get(j);
            std::vector<std::string> row = {
                csv_double(tr.times[k]),          csv_int(static_cast<long long>(j)),
                csv_double(v.x),                  csv_double(v.y),
                csv_double(v.z),                  csv_double(std::abs(norm(v) - 1.0)),
            };
            if (has_energy) row.push_back(csv_double(tr.energy[k]));
            table.add_row(std::move(row));
        }
    }
    table.write(path);
}

void write_sigma_track_csv(const std::string& path, const Trajectory& tr, double dt) {
    CsvTable table({"t", "sigma"});
    for (std::size_t k = 0; k < tr.sigma_track.size(); ++k)
        table.add_row({csv_double(static_cast<double>(k) * dt), csv_double(tr.sigma_track[k])});
    table.write(path);
}

void write_convergence_csv(const std::string& path, const ConvergenceReport& rep) {
    CsvTable table({"dt", "error"});
    for (const ConvergencePoint& p : rep.points)
        table.add_row({csv_double(p.dt), csv_double(p.error)});
    table.write(path);
}

void write_fit_csv(const std::string& path, const FitResult& fit) {
    CsvTable table({"slope", "intercept", "r2", "reliable"});
    table.add_row({csv_double(fit.slope), csv_double(fit.intercept), csv_double(fit.r2),
                   fit.reliable ? "1" : "0"});
    table.write(path);
}

void write_energy_table_csv(const std::string& path, const std::vector<EnergyCell>& cells) {
    CsvTable table({"scheme", "dt", "mean_energy_err", "failures", "status"});
    for (const EnergyCell& c : cells)
        table.add_row({c.scheme, csv_double(c.dt), csv_double(c.mean_err), csv_int(c.failures),
                       c.failures ? "failed" : "ok"});
    table.write(path);
}

void write_norm_drift_csv(const std::string& path, const std::vector<NormDriftSeries>& series) {
    CsvTable table({"series", "t", "drift"});
    for (const NormDriftSeries& s : series)
        for (std::size_t k = 0; k < s.t.size(); ++k)
            table.add_row({s.label, csv_double(s.t[k]), csv_double(s.drift[k])});
    table.write(path);
}

void write_sigma_sweep_csv(const std::string& path, const std::vector<SigmaSweepPoint>& pts) {
    CsvTable table({"sigma", "slope", "r2", "reliable"});
    for (const SigmaSweepPoint& p : pts)
        table.add_row({csv_double(p.sigma), csv_double(p.report.fit.slope),
                       csv_double(p.report.fit.r2), p.report.fit.reliable ? "1" : "0"});
    table.write(path);
}

}  // namespace s2flow
