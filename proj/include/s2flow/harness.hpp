#pragma once

// Experiment engine shared by the command line tool and the acceptance
// checks: convergence fits against a fine reference, ensemble energy-error
// tables for the rigid body, norm-drift series, sigma sweeps, and the CSV
// emission for all of them. Everything here is deterministic under a fixed
// seed; ensemble member i draws its stream from (seed, i).

#include <cstdint>
#include <string>
#include <vector>

#include "s2flow/integrators.hpp"
#include "s2flow/rigid_body.hpp"
#include "s2flow/system.hpp"

namespace s2flow {

inline constexpr double kFitR2Threshold = 0.98;

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;  // in log10 space
    double r2 = 0.0;
    bool reliable = false;   // r2 >= kFitR2Threshold with at least 3 usable points
};

// Least-squares line through (log10 dt, log10 err). Nonpositive and
// non-finite errors are dropped; fewer than three surviving points yield a
// NaN slope flagged unreliable rather than an error.
FitResult fit_loglog(const std::vector<double>& dts, const std::vector<double>& errs);

struct ConvergencePoint {
    double dt = 0.0;
    double error = 0.0;  // max site angle against the reference at t_final
};

struct ConvergenceReport {
    std::vector<ConvergencePoint> points;
    FitResult fit;
};

// Reference trajectory endpoint: the fourth-order geometric scheme with the
// shift off and the default generator, at dt_min / 100.
SphereField convergence_reference(const System& sys, const SphereField& m0, double dt_min,
                                  double t_final);

// Errors of cfg at each dt against a precomputed reference endpoint.
ConvergenceReport convergence_against(const System& sys, const SphereField& m0,
                                      const SchemeConfig& cfg, const std::vector<double>& dts,
                                      double t_final, const SphereField& ref);

// dts must be positive, strictly descending, three or more, and each must
// divide t_final evenly so every run ends at the same time.
ConvergenceReport run_convergence(const System& sys, const SphereField& m0,
                                  const SchemeConfig& cfg, const std::vector<double>& dts,
                                  double t_final);

struct SigmaSweepPoint {
    double sigma = 0.0;
    ConvergenceReport report;
};

// Fitted order per constant shift value; base.scheme must be heun or rkmk4.
// All sigma values share one reference run.
std::vector<SigmaSweepPoint> run_sigma_sweep(const System& sys, const SphereField& m0,
                                             const SchemeConfig& base,
                                             const std::vector<double>& sigmas,
                                             const std::vector<double>& dts, double t_final);

struct LabeledScheme {
    std::string label;
    SchemeConfig cfg;
};

struct RigidEnsembleSpec {
    InertiaKind kind = InertiaKind::triaxial;
    std::vector<LabeledScheme> schemes;
    std::vector<double> dts;  // positive, descending
    double t_final = 100.0;
    int ensemble = 10;
    std::uint64_t seed = 1;
};

struct EnergyCell {
    std::string scheme;
    double dt = 0.0;
    double mean_err = 0.0;  // ensemble mean of max |H - H(0)|; NaN if every member failed
    int failures = 0;       // members that raised numerical_error
};

// Mean max energy error per (scheme, dt) over an ensemble of random bodies
// and initial points. A failing member marks the cell but the table is still
// produced.
std::vector<EnergyCell> run_rigid_energy_table(const RigidEnsembleSpec& spec);

struct NormDriftSeries {
    std::string label;
    std::vector<double> t;
    std::vector<double> drift;    // max site norm deviation at t
    double terminal_ratio = 1.0;  // max site norm at the end (unit start)
};

NormDriftSeries run_norm_drift(const System& sys, const SphereField& m0,
                               const SchemeConfig& cfg, double dt, double t_final,
                               long long stride, const std::string& label);

// CSV emission. Columns:
//   trajectory:  t,site,x,y,z,norm_dev[,energy]
//   sigma track: t,sigma                  (one row per step)
//   convergence: dt,error
//   fit:         slope,intercept,r2,reliable
//   energy:      scheme,dt,mean_energy_err,failures,status
//   norm drift:  series,t,drift
//   sigma sweep: sigma,slope,r2,reliable
void write_trajectory_csv(const std::string& path, const Trajectory& tr);
void write_sigma_track_csv(const std::string& path, const Trajectory& tr, double dt);
void write_convergence_csv(const std::string& path, const ConvergenceReport& rep);
void write_fit_csv(const std::string& path, const FitResult& fit);
void write_energy_table_csv(const std::string& path, const std::vector<EnergyCell>& cells);
void write_norm_drift_csv(const std::string& path, const std::vector<NormDriftSeries>& series);
void write_sigma_sweep_csv(const std::string& path, const std::vector<SigmaSweepPoint>& pts);

}  // namespace s2flow
