#include "mkdv/integrator.hpp"

#include <cmath>
#include <string>

#include "mkdv/errors.hpp"
#include "mkdv/lax.hpp"

namespace mkdv {

namespace {

int cells_between(const UniformSamples& s, double x0, double x1) {
    return std::max(1, static_cast<int>(std::ceil(std::abs(x1 - x0) / s.h() - 1e-9)));
}

void check_range(const UniformSamples& s, double x0, double x1, const char* what) {
    const double eps = 1e-12 * (1.0 + std::abs(s.b));
    if (x0 < s.a - eps || x0 > s.b + eps || x1 < s.a - eps || x1 > s.b + eps) {
        throw DomainError(std::string(what) + ": endpoints outside the sampled interval");
    }
}

}  // namespace

namespace {

/// 2x2 matrix in extended precision for the step accumulation.
struct Mat2X {
    using C = std::complex<long double>;
    C m11, m12, m21, m22;

    static Mat2X from(const Mat2C& a) { return {C(a.m11), C(a.m12), C(a.m21), C(a.m22)}; }
    Mat2C to_double() const {
        auto d = [](C z) { return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag())); };
        return {d(m11), d(m12), d(m21), d(m22)};
    }
    Mat2X operator*(const Mat2X& b) const {
        return {m11 * b.m11 + m12 * b.m21, m11 * b.m12 + m12 * b.m22, m21 * b.m11 + m22 * b.m21,
                m21 * b.m12 + m22 * b.m22};
    }
};

/// exp of a trace-free matrix, extended precision.
Mat2X expm_traceless_x(const Mat2X& a) {
    using C = Mat2X::C;
    const C w2 = -(a.m11 * a.m22 - a.m12 * a.m21);
    const C w = std::sqrt(w2);
    C ch;
    C shc;
    if (std::abs(w) < 1e-3L) {
        ch = 1.0L + w2 / 2.0L * (1.0L + w2 / 12.0L * (1.0L + w2 / 30.0L * (1.0L + w2 / 56.0L)));
        shc = 1.0L + w2 / 6.0L * (1.0L + w2 / 20.0L * (1.0L + w2 / 42.0L * (1.0L + w2 / 72.0L)));
    } else {
        ch = std::cosh(w);
        shc = std::sinh(w) / w;
    }
    return {ch + shc * a.m11, shc * a.m12, shc * a.m21, ch + shc * a.m22};
}

}  // namespace

Mat2C magnus_propagate(const Generator& a, double s0, double s1, const Mat2C& y0, long n) {
    if (n < 1) throw InputError("magnus_propagate: step count must be positive");
    // Steps and products are carried in long double: large-|k| spectral
    // matrices are formed from entries that cancel to many digits.
    using LD = long double;
    using C = Mat2X::C;
    const LD h = (static_cast<LD>(s1) - s0) / static_cast<LD>(n);
    const LD off = 0.5L / std::sqrt(3.0L);
    const LD coef = std::sqrt(3.0L) / 12.0L;
    Mat2X y = Mat2X::from(y0);
    for (long i = 0; i < n; ++i) {
        const LD mid = s0 + (static_cast<LD>(i) + 0.5L) * h;
        const Mat2X a1 = Mat2X::from(a(static_cast<double>(mid - off * h)));
        const Mat2X a2 = Mat2X::from(a(static_cast<double>(mid + off * h)));
        const Mat2X c1 = a2 * a1;
        const Mat2X c2 = a1 * a2;
        const C hh = 0.5L * h;
        const C hc = coef * h * h;
        const Mat2X omega{hh * (a1.m11 + a2.m11) + hc * (c1.m11 - c2.m11),
                          hh * (a1.m12 + a2.m12) + hc * (c1.m12 - c2.m12),
                          hh * (a1.m21 + a2.m21) + hc * (c1.m21 - c2.m21),
                          hh * (a1.m22 + a2.m22) + hc * (c1.m22 - c2.m22)};
        y = expm_traceless_x(omega) * y;
    }
    const Mat2C out = y.to_double();
    if (!out.is_finite()) throw NumericalError("magnus_propagate: solution overflowed");
    return out;
}

long magnus_steps(double span, int cells, double norm, const IntegratorOptions& opt) {
    if (!(opt.tol > 0.0)) throw ConfigError("integrator tolerance must be positive");
    if (opt.steps_per_cell > 0) return static_cast<long>(opt.steps_per_cell) * cells;
    const double theta = std::pow(720.0 * opt.tol, 0.2);
    const double want = std::ceil(std::abs(span) * norm / theta);
    if (want > static_cast<double>(opt.max_steps)) {
        throw NumericalError("integrator: " + std::to_string(want) + " steps needed, cap is " +
                             std::to_string(opt.max_steps));
    }
    return std::max<long>(cells, static_cast<long>(want));
}

Mat2C integrate_x_system(const UniformSamples& q, cplx k, int lambda, double x0, double x1,
                         const Mat2C& y0, const IntegratorOptions& opt) {
    check_range(q, x0, x1, "integrate_x_system");
    check_exponent(std::abs(k.imag()) * std::abs(x1 - x0), "x-system growth");
    if (x0 == x1) return y0;
    const double norm = std::abs(k) + q.max_abs();
    const long n = magnus_steps(x1 - x0, cells_between(q, x0, x1), norm, opt);
    const Mat2C free = Mat2C::diag(kI * k, -kI * k);
    auto gen = [&](double x) {
        const double qx = q(x);
        return free + build_Q(qx, lambda);
    };
    return magnus_propagate(gen, x0, x1, y0, n);
}

Mat2C integrate_t_system(const TraceSet& tr, cplx k, int lambda, double t0, double t1,
                         const Mat2C& y0, const IntegratorOptions& opt) {
    check_range(tr.h0, t0, t1, "integrate_t_system");
    const cplx k3 = k * k * k;
    check_exponent(4.0 * std::abs(k3.imag()) * std::abs(t1 - t0), "t-system growth");
    if (t0 == t1) return y0;
    const double m0 = tr.h0.max_abs();
    const double ak = std::abs(k);
    const double norm = 4.0 * ak * ak * ak + 2.0 * ak * m0 * m0 + 4.0 * ak * ak * m0 +
                        2.0 * ak * tr.h1.max_abs() + 2.0 * m0 * m0 * m0 + tr.h2.max_abs();
    const long n = magnus_steps(t1 - t0, cells_between(tr.h0, t0, t1), norm, opt);
    const Mat2C free = Mat2C::diag(-4.0 * kI * k3, 4.0 * kI * k3);
    auto gen = [&](double t) { return free + build_Qtilde(tr.h0(t), tr.h1(t), tr.h2(t), k, lambda); };
    return magnus_propagate(gen, t0, t1, y0, n);
}

}  // namespace mkdv
