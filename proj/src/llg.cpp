#include "s2flow/llg.hpp"

#include <cmath>

#include "s2flow/errors.hpp"
#include "s2flow/rng.hpp"

namespace s2flow {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

kernels::ConstView3 view(const SphereField& f) { return {f.x.data(), f.y.data(), f.z.data()}; }
kernels::ConstView3 view(const GeneratorField& f) { return {f.x.data(), f.y.data(), f.z.data()}; }
kernels::View3 mut_view(GeneratorField& f) { return {f.x.data(), f.y.data(), f.z.data()}; }

kernels::ChainFieldCoeffs make_coeffs(const LlgParams& p, double h) {
    return {p.exchange_coeff / (h * h), p.mu0, p.k_anis, p.easy_axis, p.h_app};
}

double chain_spacing(std::size_t n) {
    if (n < 2) throw config_error("chain needs at least two sites");
    return 1.0 / static_cast<double>(n - 1);
}

}  // namespace

SphereField llg_chain_state(std::size_t n) {
    SphereField m(n, chain_spacing(n));
    for (std::size_t j = 0; j < n; ++j) m.x[j] = 1.0;
    return m;
}

SphereField llg_profile_state(std::size_t n, double amp) {
    SphereField m = llg_chain_state(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double xj = static_cast<double>(j) * m.spacing;
        m.set(j, normalized({1.0, amp * std::sin(kTwoPi * xj), amp * std::cos(kTwoPi * xj)}));
    }
    return m;
}

void llg_add_jitter(SphereField& m, double eps, std::uint64_t seed) {
    for (std::size_t j = 0; j < m.size(); ++j) {
        Rng rng(derive_seed(seed, j));
        m.set(j, normalized(m.get(j) + eps * rng.unit_vector()));
    }
}

void llg_effective_field(const LlgParams& p, const SphereField& m, GeneratorField& h) {
    const double sp = chain_spacing(m.size());
    const kernels::ChainFieldCoeffs c = make_coeffs(p, sp);
    h.resize(m.size());
    kernels::chain_field(view(m), c, mut_view(h), m.size());
}

double llg_free_energy(const LlgParams& p, const SphereField& m) {
    const std::size_t n = m.size();
    const double h = chain_spacing(n);
    double e_ex = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) e_ex += norm2(m.get(j + 1) - m.get(j));
    e_ex *= 0.5 * p.exchange_coeff / h;
    double e_loc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = (j == 0 || j == n - 1) ? 0.5 * h : h;
        const Vec3 mu = m.get(j);
        const double de = dot(mu, p.easy_axis);
        e_loc += w * (-p.mu0 * dot(mu, p.h_app) + 0.5 * p.mu0 * mu.x * mu.x -
                      0.5 * p.k_anis * de * de);
    }
    return e_ex + e_loc;
}

LlgSystem::LlgSystem(const LlgParams& p, std::size_t n)
    : p_(p), n_(n), h_(chain_spacing(n)) {
    const double en = norm(p_.easy_axis);
    if (en <= 0.0) throw config_error("easy axis must be nonzero");
    p_.easy_axis = (1.0 / en) * p_.easy_axis;
    coeffs_ = make_coeffs(p_, h_);
    lin_coeffs_ = coeffs_;
    lin_coeffs_.h_app = {0.0, 0.0, 0.0};
}

void LlgSystem::generator(const SphereField& m, GeneratorField& a) const {
    if (m.size() != n_) throw config_error("state size mismatch");
    heff_.resize(n_);
    kernels::chain_field(view(m), coeffs_, mut_view(heff_), n_);
    a.resize(n_);
    kernels::llg_generator(view(m), view(heff_), p_.lambda, p_.precession, mut_view(a), n_);
}

std::optional<double> LlgSystem::energy(const SphereField& m) const {
    return llg_free_energy(p_, m);
}

void LlgSystem::flow_derivatives(const SphereField& m, GeneratorVariant variant,
                                 std::array<GeneratorField, 4>& out) const {
    if (m.size() != n_) throw config_error("state size mismatch");
    heff_.resize(n_);
    kernels::chain_field(view(m), coeffs_, mut_view(heff_), n_);
    md1_.resize(n_);
    md2_.resize(n_);
    md3_.resize(n_);
    hd1_.resize(n_);
    hd2_.resize(n_);
    hd3_.resize(n_);
    for (auto& f : out) f.resize(n_);

    const double la = p_.lambda;
    const bool prec = p_.precession;

    kernels::llg_generator(view(m), view(heff_), la, prec, mut_view(out[0]), n_);
    for (std::size_t i = 0; i < n_; ++i) md1_.set(i, cross(out[0].get(i), m.get(i)));
    kernels::chain_field(view(md1_), lin_coeffs_, mut_view(hd1_), n_);

    for (std::size_t i = 0; i < n_; ++i) {
        const Vec3 mu = m.get(i), m1 = md1_.get(i);
        const Vec3 h0 = heff_.get(i), h1 = hd1_.get(i);
        const Vec3 a1 = prec ? h1 - la * (cross(h1, mu) + cross(h0, m1))
                             : la * (cross(m1, h0) + cross(mu, h1));
        out[1].set(i, a1);
        md2_.set(i, cross(a1, mu) + cross(out[0].get(i), m1));
    }
    kernels::chain_field(view(md2_), lin_coeffs_, mut_view(hd2_), n_);

    for (std::size_t i = 0; i < n_; ++i) {
        const Vec3 mu = m.get(i), m1 = md1_.get(i), m2 = md2_.get(i);
        const Vec3 h0 = heff_.get(i), h1 = hd1_.get(i), h2 = hd2_.get(i);
        const Vec3 a2 = prec ? h2 - la * (cross(h2, mu) + 2.0 * cross(h1, m1) + cross(h0, m2))
                             : la * (cross(m2, h0) + 2.0 * cross(m1, h1) + cross(mu, h2));
        out[2].set(i, a2);
        md3_.set(i, cross(a2, mu) + 2.0 * cross(out[1].get(i), m1) + cross(out[0].get(i), m2));
    }
    kernels::chain_field(view(md3_), lin_coeffs_, mut_view(hd3_), n_);

    for (std::size_t i = 0; i < n_; ++i) {
        const Vec3 mu = m.get(i), m1 = md1_.get(i), m2 = md2_.get(i), m3 = md3_.get(i);
        const Vec3 h0 = heff_.get(i), h1 = hd1_.get(i), h2 = hd2_.get(i), h3 = hd3_.get(i);
        const Vec3 a3 = prec ? h3 - la * (cross(h3, mu) + 3.0 * cross(h2, m1) +
                                          3.0 * cross(h1, m2) + cross(h0, m3))
                             : la * (cross(m3, h0) + 3.0 * cross(m2, h1) +
                                     3.0 * cross(m1, h2) + cross(mu, h3));
        out[3].set(i, a3);
    }

    if (variant == GeneratorVariant::orthogonal) {
        // d^k of A - <A,m> m; <A,m> is not conserved here, so the scalar gets
        // the full Leibniz treatment too.
        for (std::size_t i = 0; i < n_; ++i) {
            const Vec3 mu = m.get(i), m1 = md1_.get(i), m2 = md2_.get(i), m3 = md3_.get(i);
            const Vec3 a0 = out[0].get(i), a1 = out[1].get(i);
            const Vec3 a2 = out[2].get(i), a3 = out[3].get(i);
            const double s0 = dot(a0, mu);
            const double s1 = dot(a1, mu) + dot(a0, m1);
            const double s2 = dot(a2, mu) + 2.0 * dot(a1, m1) + dot(a0, m2);
            const double s3 = dot(a3, mu) + 3.0 * dot(a2, m1) + 3.0 * dot(a1, m2) + dot(a0, m3);
            out[0].set(i, a0 - s0 * mu);
            out[1].set(i, a1 - (s1 * mu + s0 * m1));
            out[2].set(i, a2 - (s2 * mu + 2.0 * s1 * m1 + s0 * m2));
            out[3].set(i, a3 - (s3 * mu + 3.0 * s2 * m1 + 3.0 * s1 * m2 + s0 * m3));
        }
    }
}

}  // namespace s2flow
