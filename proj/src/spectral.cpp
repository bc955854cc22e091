#include "mkdv/spectral.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "mkdv/errors.hpp"

namespace mkdv {

Mat2C compute_s(const InitialProfile& q0, cplx k, int lambda, const IntegratorOptions& opt) {
    // Zero potential: Phi(x) = e^{ikx sigma3} and s = I exactly.
    if (q0.q.max_abs() == 0.0) return Mat2C::identity();
    const double L = q0.L();
    return integrate_x_system(q0.q, k, lambda, L, 0.0, exp_sigma3(kI * k * L), opt);
}

namespace {

Mat2C t_map(const TraceSet& tr, cplx k, const ModelParams& p, const IntegratorOptions& opt) {
    if (tr.h0.max_abs() == 0.0 && tr.h1.max_abs() == 0.0 && tr.h2.max_abs() == 0.0) return Mat2C::identity();
    const double T = tr.h0.b;
    const cplx k3 = k * k * k;
    return integrate_t_system(tr, k, p.lambda, T, 0.0, exp_sigma3(-4.0 * kI * k3 * T), opt);
}

std::string k_label(cplx k) {
    std::ostringstream os;
    os.precision(17);
    os << "k = (" << k.real() << ", " << k.imag() << ")";
    return os.str();
}

void check_den(cplx den, double floor, const char* fn, cplx k) {
    if (!(std::abs(den) >= floor)) {
        throw SingularJumpError(std::string(fn) + ": denominator " + std::to_string(std::abs(den)) +
                                " below floor at " + k_label(k));
    }
}

cplx exp_guarded(cplx z, const char* what) {
    check_exponent(z.real(), what);
    return std::exp(z);
}

}  // namespace

Mat2C compute_S(const BoundaryTraces& tr, cplx k, const ModelParams& p, const IntegratorOptions& opt) {
    return t_map(tr.g, k, p, opt);
}

Mat2C compute_S1(const BoundaryTraces& tr, cplx k, const ModelParams& p, const IntegratorOptions& opt) {
    return t_map(tr.f, k, p, opt);
}

cplx SpectralPoint::d() const { return a() * Abar() - static_cast<double>(lambda) * b() * Bbar(); }

cplx SpectralPoint::d1() const {
    const cplx e = exp_guarded(-2.0 * kI * k * L, "e^{-2ikL}");
    return a() * A1() + static_cast<double>(lambda) * e * bbar() * B1();
}

cplx SpectralPoint::dbar() const { return abar() * A() - static_cast<double>(lambda) * bbar() * B(); }

cplx SpectralPoint::d1bar() const {
    const cplx e = exp_guarded(2.0 * kI * k * L, "e^{2ikL}");
    return abar() * A1bar() + static_cast<double>(lambda) * e * b() * B1bar();
}

double default_gamma_floor(cplx k) { return 1e-12 * (1.0 + std::abs(k)); }

GammaValues gamma_fns(const SpectralPoint& p, std::optional<double> floor) {
    const double fl = floor.value_or(default_gamma_floor(p.k));
    const double lam = p.lambda;
    check_den(p.abar(), fl, "gamma", p.k);
    const cplx ad = p.a() * p.d();
    check_den(ad, fl, "Gamma", p.k);
    const cplx d1 = p.d1();
    check_den(d1, fl, "Gamma1/Gamma2", p.k);
    const cplx e = exp_guarded(-2.0 * kI * p.k * p.L, "e^{-2ikL}");
    GammaValues g;
    g.gamma = p.b() / p.abar();
    g.Gamma = lam * p.Bbar() / ad;
    g.Gamma1 = e * p.a() * p.B1() / d1;
    g.Gamma2 = p.a() * (e * p.abar() * p.B1() + p.b() * p.A1()) / d1;
    return g;
}

GammaValues gamma_fns_reflected(const SpectralPoint& p, std::optional<double> floor) {
    const double fl = floor.value_or(default_gamma_floor(p.k));
    const double lam = p.lambda;
    check_den(p.a(), fl, "gamma (reflected)", p.k);
    const cplx ad = p.abar() * p.dbar();
    check_den(ad, fl, "Gamma (reflected)", p.k);
    const cplx d1 = p.d1bar();
    check_den(d1, fl, "Gamma1/Gamma2 (reflected)", p.k);
    const cplx e = exp_guarded(2.0 * kI * p.k * p.L, "e^{2ikL}");
    GammaValues g;
    g.gamma = p.bbar() / p.a();
    g.Gamma = lam * p.B() / ad;
    g.Gamma1 = e * p.abar() * p.B1bar() / d1;
    g.Gamma2 = p.abar() * (e * p.a() * p.B1bar() + p.bbar() * p.A1bar()) / d1;
    return g;
}

SpectralData::SpectralData(InitialProfile q0, BoundaryTraces tr, ModelParams p, IntegratorOptions opt)
    : q0_(std::move(q0)), tr_(std::move(tr)), params_(p), opt_(opt) {
    params_.validate();
    if (std::abs(q0_.L() - params_.L) > 1e-12 * params_.L) throw InputError("profile length differs from L");
    if (std::abs(tr_.T() - params_.T) > 1e-12 * params_.T) throw InputError("trace horizon differs from T");
}

std::size_t SpectralData::KeyHash::operator()(const std::pair<std::uint64_t, std::uint64_t>& key) const noexcept {
    return std::hash<std::uint64_t>{}(key.first * 0x9e3779b97f4a7c15ULL ^ key.second);
}

const SpectralPoint& SpectralData::at(cplx k) const {
    const auto key = std::make_pair(std::bit_cast<std::uint64_t>(k.real()), std::bit_cast<std::uint64_t>(k.imag()));
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
    }
    auto pt = std::make_unique<SpectralPoint>(k, params_.lambda, params_.L, compute_s(q0_, k, params_.lambda, opt_),
                                              compute_S(tr_, k, params_, opt_), compute_S1(tr_, k, params_, opt_));
    std::lock_guard lock(mutex_);
    auto [it, inserted] = cache_.try_emplace(key, std::move(pt));
    return *it->second;
}

std::size_t SpectralData::cache_size() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
}

Mat2C eval_mu(int n, double x, double t, cplx k, const ModelParams& p, const InitialProfile& q0,
              const BoundaryTraces& tr, const RowProvider& row, const IntegratorOptions& opt) {
    if (n < 1 || n > 4) throw InputError("eval_mu: n must be 1..4");
    const double L = p.L;
    const double T = p.T;
    const double xn = (n == 1 || n == 2) ? 0.0 : L;
    const double tn = (n == 1 || n == 4) ? T : 0.0;
    auto theta = [&](double xx, double tt) { return PhaseArgs{k, xx, tt}.theta(); };

    Mat2C phi = exp_sigma3(theta(xn, tn));
    if (t != tn) {
        const TraceSet& side = (xn == 0.0) ? tr.g : tr.f;
        phi = integrate_t_system(side, k, p.lambda, tn, t, phi, opt);
    }
    if (x != xn) {
        const UniformSamples* q = nullptr;
        if (t == 0.0) {
            q = &q0.q;
        } else if (row) {
            q = row(t);
        }
        if (q == nullptr) throw InputError("eval_mu: no q(., t) row available for the x leg");
        phi = integrate_x_system(*q, k, p.lambda, xn, x, phi, opt);
    }
    return phi * exp_sigma3(-theta(x, t));
}

}  // namespace mkdv
