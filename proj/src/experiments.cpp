#include "s2flow/experiments.hpp"

#include "s2flow/errors.hpp"

namespace s2flow::experiments {

LlgParams chain_params(const ChainSpec& spec) {
    if (spec.n < 2) throw config_error("chain needs at least two sites");
    LlgParams p;
    const double h = 1.0 / static_cast<double>(spec.n - 1);
    p.exchange_coeff = spec.stencil_factor * h * h;
    p.mu0 = spec.mu0;
    p.k_anis = spec.k_anis;
    p.easy_axis = spec.easy_axis;
    p.h_app = spec.h_app;
    p.lambda = spec.lambda;
    p.precession = spec.precession;
    return p;
}

SphereField chain_start(const ChainSpec& spec) {
    SphereField m = llg_profile_state(spec.n, spec.profile_amp);
    if (spec.jitter > 0.0) llg_add_jitter(m, spec.jitter, spec.jitter_seed);
    return m;
}

ChainSpec chain_relax() { return {}; }

ChainSpec chain_overdamped_weak() {
    ChainSpec s;
    s.h_app = {0.05, 0.05, 0.0};
    s.lambda = 1.0;
    s.precession = false;
    return s;
}

ChainSpec chain_overdamped_strong() {
    ChainSpec s;
    s.lambda = 1.0;
    s.precession = false;
    return s;
}

ChainSpec chain_rough() {
    ChainSpec s;
    s.profile_amp = 0.9;
    s.jitter = 1.0;
    s.stencil_factor = 4.0;
    return s;
}

ChainSpec chain_smooth() {
    ChainSpec s;
    s.profile_amp = 0.8;
    return s;
}

std::vector<double> dts_chain_euler() { return {0.01, 0.005, 0.0025, 0.00125}; }
std::vector<double> dts_chain_fast() { return {0.1, 0.05, 0.025, 0.0125}; }
std::vector<double> dts_sweep() { return {0.1, 0.05, 0.025}; }
std::vector<double> sweep_sigmas() { return {-20, -10, -5, -2, 0, 2, 5, 10, 20}; }

InertiaTensor rb_reference_body() { return {1.0, 2.0, 4.0}; }
Vec3 rb_reference_start() { return normalized({0.2, 0.7, 0.75}); }

std::vector<double> dts_rb_convergence() { return {0.1, 0.05, 0.025}; }
std::vector<double> dts_table_euler() { return {10.0, 1.0, 0.1, 0.01}; }
std::vector<double> dts_table_higher() { return {1.0, 0.1, 0.01}; }

namespace {

SchemeConfig scheme(Scheme s, GeneratorVariant v = GeneratorVariant::default_gen) {
    SchemeConfig cfg;
    cfg.scheme = s;
    cfg.variant = v;
    return cfg;
}

SchemeConfig euler_cor() {
    SchemeConfig cfg = scheme(Scheme::euler_fwd);
    cfg.sigma = SigmaPolicy::analytic();
    cfg.exp_choice = ExpChoice::exp;
    return cfg;
}

}  // namespace

std::vector<LabeledScheme> euler_family() {
    return {
        {"euler_def", scheme(Scheme::euler_fwd)},
        {"euler_orth", scheme(Scheme::euler_fwd, GeneratorVariant::orthogonal)},
        {"euler_cor", euler_cor()},
    };
}

std::vector<LabeledScheme> heun_family() {
    SchemeConfig dcor = scheme(Scheme::heun);
    dcor.correction = Correction::dcor;
    return {
        {"heun_def", scheme(Scheme::heun)},
        {"heun_orth", scheme(Scheme::heun, GeneratorVariant::orthogonal)},
        {"heun_dcor", dcor},
    };
}

std::vector<LabeledScheme> fourth_family() {
    return {
        {"rkmk4_def", scheme(Scheme::rkmk4)},
        {"rkmk4_orth", scheme(Scheme::rkmk4, GeneratorVariant::orthogonal)},
        {"sy4_def", scheme(Scheme::sy4)},
        {"sy4_orth", scheme(Scheme::sy4, GeneratorVariant::orthogonal)},
    };
}

RigidEnsembleSpec table_spec(const std::string& family, InertiaKind kind, int ensemble,
                             std::uint64_t seed) {
    RigidEnsembleSpec spec;
    spec.kind = kind;
    spec.t_final = kTableTFinal;
    spec.ensemble = ensemble;
    spec.seed = seed;
    if (family == "euler") {
        spec.schemes = euler_family();
        spec.dts = dts_table_euler();
    } else if (family == "heun") {
        spec.schemes = heun_family();
        spec.dts = dts_table_higher();
    } else if (family == "fourth") {
        spec.schemes = fourth_family();
        spec.dts = dts_table_higher();
    } else {
        throw config_error("unknown scheme family: " + family);
    }
    return spec;
}

InertiaTensor rb_separatrix_body() { return {3.0, 6.0, 12.0}; }

std::vector<LabeledScheme> separatrix_family() { return euler_family(); }

}  // namespace s2flow::experiments
