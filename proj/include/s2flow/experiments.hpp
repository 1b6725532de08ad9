#pragma once

// Frozen experiment definitions shared by the command line tool, the preset
// files under presets/, and the acceptance checks. The numbers were
// calibrated once against the stated targets (norm-drift bands, fitted
// orders, energy-error ratios) and are pinned; tweak them only together with
// the presets and the checks that consume them.

#include <cstdint>
#include <string>
#include <vector>

#include "s2flow/harness.hpp"
#include "s2flow/llg.hpp"
#include "s2flow/rigid_body.hpp"

namespace s2flow::experiments {

// ---- spin chain ------------------------------------------------------------

struct ChainSpec {
    std::size_t n = 100;
    double profile_amp = 0.77;       // transverse helix amplitude
    double jitter = 0.0;             // per-site random kick, 0 = smooth start
    std::uint64_t jitter_seed = 2026;
    double stencil_factor = 1.0;     // exchange_coeff = factor * spacing^2
    double mu0 = 1.0;
    double k_anis = 1.0;
    Vec3 easy_axis = {1.0, 0.0, 0.0};
    Vec3 h_app = {5.0, 0.0, 0.0};
    double lambda = 0.05;
    bool precession = true;
};

LlgParams chain_params(const ChainSpec& spec);
SphereField chain_start(const ChainSpec& spec);

// Strong uniform field, smooth helix start. The classical forward Euler
// baseline at kBaselineDt inflates the norm by about 1.0012 by kRelaxTFinal;
// the geometric runs reach the aligned equilibrium.
ChainSpec chain_relax();

// Damping-only flow (no precession term), weak and strong applied fields.
ChainSpec chain_overdamped_weak();
ChainSpec chain_overdamped_strong();

// Jittered start with a stiffer exchange term; drives the classical RK4
// norm drift on [0,1] into the mid 1e-6 range.
ChainSpec chain_rough();

// Smooth start used for convergence fits and sigma sweeps.
ChainSpec chain_smooth();

inline constexpr double kGeoDt = 0.01;        // geometric schemes
inline constexpr double kBaselineDt = 1e-4;   // classical baselines
inline constexpr double kRelaxTFinal = 40.0;
inline constexpr double kOverdampedWeakTFinal = 200.0;
inline constexpr double kOverdampedStrongTFinal = 5.0;
inline constexpr double kDriftTFinal = 1.0;
inline constexpr double kConvergenceTFinal = 1.0;

// Step lists for the convergence fits; each scheme is fitted inside its own
// asymptotic window.
std::vector<double> dts_chain_euler();   // {0.01, 0.005, 0.0025, 0.00125}
std::vector<double> dts_chain_fast();    // {0.1, 0.05, 0.025, 0.0125}: heun, rkmk4
std::vector<double> dts_sweep();         // {0.1, 0.05, 0.025}
std::vector<double> sweep_sigmas();      // {-20 ... 20}

// ---- rigid body ------------------------------------------------------------

InertiaTensor rb_reference_body();       // {1, 2, 4}
Vec3 rb_reference_start();               // normalized (0.2, 0.7, 0.75)

inline constexpr double kRbConvergenceTFinal = 2.0;
std::vector<double> dts_rb_convergence();  // {0.1, 0.05, 0.025}

// Ensemble energy-error tables. Scheme families mirror the method columns:
// euler: default / orthogonal / analytically corrected (exp map);
// heun: default / orthogonal / defect corrected;
// fourth: rkmk4 and sy4, each with both generators.
inline constexpr std::uint64_t kTableSeed = 20260816;
inline constexpr int kTableEnsemble = 10;
inline constexpr double kTableTFinal = 100.0;
std::vector<double> dts_table_euler();   // {10, 1, 0.1, 0.01}
std::vector<double> dts_table_higher();  // {1, 0.1, 0.01}

std::vector<LabeledScheme> euler_family();
std::vector<LabeledScheme> heun_family();
std::vector<LabeledScheme> fourth_family();

// family is one of "euler", "heun", "fourth"; throws config_error otherwise.
RigidEnsembleSpec table_spec(const std::string& family, InertiaKind kind,
                             int ensemble = kTableEnsemble,
                             std::uint64_t seed = kTableSeed);

// Separatrix capture run: a slow body whose default-generator energy error
// lands mid-way between 1e-2 and 1e-1 over [0,500] at dt = 0.1, while the
// orthogonal and corrected columns stay at rounding level.
InertiaTensor rb_separatrix_body();      // {3, 6, 12}
inline constexpr int kSeparatrixBranch = 0;
inline constexpr double kSeparatrixPhase = 0.3;
inline constexpr double kSeparatrixDt = 0.1;
inline constexpr double kSeparatrixTFinal = 500.0;
std::vector<LabeledScheme> separatrix_family();  // euler def / orth / cor

}  // namespace s2flow::experiments
