#pragma once

// One-step methods for dM/dt = A(M) x M on (S^2)^N. The geometric schemes
// assemble one algebra element F per site per step and touch the sphere with
// a single Exp(F) application, so unit norms are preserved to roundoff with
// no renormalization anywhere. The classical schemes integrate the ambient
// ODE in R^{3N} and are kept as drift baselines.

#include <string>
#include <vector>

#include "s2flow/field.hpp"
#include "s2flow/sigma.hpp"
#include "s2flow/system.hpp"

namespace s2flow {

enum class Scheme {
    euler_fwd,
    euler_impl,
    heun,
    rkmk4,
    sy4,
    classical_euler,
    classical_heun,
    classical_rk4,
};

enum class Correction { none, dcor };

bool is_geometric(Scheme s);
const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);  // throws config_error

struct SchemeConfig {
    Scheme scheme = Scheme::euler_fwd;
    GeneratorVariant variant = GeneratorVariant::default_gen;
    SigmaPolicy sigma = {};
    ExpChoice exp_choice = ExpChoice::cay;  // rkmk4/sy4 are cay-based and ignore this
    Correction correction = Correction::none;
    double impl_tol = 1e-12;
    int impl_max_iters = 100;
};

struct IntegrateOptions {
    long long record_stride = 1;  // record every k-th state; 0 = first and last only
    int track_site = -1;          // if >= 0, record sigma at this site every step
    bool check_finite = true;
};

struct Trajectory {
    std::vector<double> times;       // recorded instants (t_k = k dt, exact products)
    std::vector<SphereField> states;
    std::vector<double> norm_dev;    // max site norm deviation at recorded instants
    std::vector<double> energy;      // system energy at recorded instants, if provided
    std::vector<double> sigma_track; // per-step sigma at track_site (step start times)
    double max_norm_dev = 0.0;       // over every step taken
    double max_energy_err = 0.0;     // max |E(t) - E(0)| over every step, if provided
    SphereField final_state;
    double t_final = 0.0;
    long long n_steps = 0;
};

// Reusable-buffer stepper; step() writes the post-step state into out.
class Stepper {
public:
    Stepper(const System& sys, const SchemeConfig& cfg);
    void step(const SphereField& m, double dt, SphereField& out, long long step_index);
    // sigma values used by the last step (empty when the policy is zero)
    const std::vector<double>& last_sigma() const { return sigma_; }

private:
    void eval_shifted(const SphereField& m, GeneratorField& out);
    void geometric_euler_fwd(const SphereField& m, double dt, SphereField& out);
    void geometric_euler_impl(const SphereField& m, double dt, SphereField& out,
                              long long step_index);
    void geometric_heun(const SphereField& m, double dt, SphereField& out);
    void geometric_rkmk4(const SphereField& m, double dt, SphereField& out);
    void geometric_sy4(const SphereField& m, double dt, SphereField& out);
    void classical(const SphereField& m, double dt, SphereField& out);

    const System& sys_;
    SchemeConfig cfg_;
    std::vector<double> sigma_;
    GeneratorField om1_, om2_, f_;
    GeneratorField s1_, s2_, s3_, s4_;
    SphereField p_;
    std::vector<double> defect_;
};

// ceil(t_final / dt) fixed steps (a horizon shorter than one step takes none).
long long step_count(double t_final, double dt);

Trajectory integrate(const System& sys, const SphereField& m0, double dt, double t_final,
                     const SchemeConfig& cfg, const IntegrateOptions& opt = {});

// Single step, fresh buffers: convenience for tests and composition.
SphereField step_once(const System& sys, const SphereField& m, double dt,
                      const SchemeConfig& cfg);

}  // namespace s2flow
