#include "mkdv/sampled.hpp"

#include <algorithm>
#include <cmath>

#include "mkdv/errors.hpp"
#include "mkdv/quadrature.hpp"

namespace mkdv {

UniformSamples::UniformSamples(double a_, double b_, std::vector<double> v_)
    : a(a_), b(b_), v(std::move(v_)) {}

double UniformSamples::operator()(double x) const {
    const int n = intervals();
    if (n < 1) return v.empty() ? 0.0 : v[0];
    const double s = (x - a) / h();
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i, 0, n - 1);
    if (n < 3) {
        const double u = s - i;
        return v[i] * (1.0 - u) + v[i + 1] * u;
    }
    const int j0 = std::clamp(i - 1, 0, n - 3);
    const double u = s - j0;  // stencil nodes at u = 0, 1, 2, 3
    const double l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    const double l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
    const double l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
    const double l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
    return l0 * v[j0] + l1 * v[j0 + 1] + l2 * v[j0 + 2] + l3 * v[j0 + 3];
}

double UniformSamples::derivative(int i, int m) const {
    const int n = intervals();
    const int width = (m == 0) ? 1 : 4 + m;
    if (n + 1 < width) throw InputError("derivative: too few samples for a fourth-order stencil");
    if (m == 0) return v.at(i);
    int j0 = i - width / 2;
    j0 = std::clamp(j0, 0, n + 1 - width);
    std::vector<double> xs(width);
    for (int j = 0; j < width; ++j) xs[j] = j0 + j;
    const auto w = fd_weights(static_cast<double>(i), xs, m);
    double acc = 0.0;
    for (int j = 0; j < width; ++j) acc += w[j] * v[j0 + j];
    return acc / std::pow(h(), m);
}

double UniformSamples::max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void UniformSamples::validate(const std::string& name, int min_intervals) const {
    if (!(b > a)) throw InputError(name + ": empty sample interval");
    if (intervals() < min_intervals) {
        throw InputError(name + ": need at least " + std::to_string(min_intervals) + " intervals");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw InputError(name + ": non-finite sample at index " + std::to_string(i));
    }
}

void InitialProfile::validate(double max_second_difference) const {
    q.validate("initial profile", 8);
    if (q.a != 0.0) throw InputError("initial profile must start at x = 0");
    for (int i = 1; i < q.intervals(); ++i) {
        const double d2 = q.v[i - 1] - 2.0 * q.v[i] + q.v[i + 1];
        if (std::abs(d2) > max_second_difference) {
            throw InputError("initial profile: second difference " + std::to_string(d2) + " at index " +
                             std::to_string(i) + " exceeds the smoothness bound");
        }
    }
}

void TraceSet::validate(const std::string& name) const {
    h0.validate(name + " h0", 8);
    h1.validate(name + " h1", 8);
    h2.validate(name + " h2", 8);
    if (h1.intervals() != h0.intervals() || h2.intervals() != h0.intervals() || h1.b != h0.b ||
        h2.b != h0.b) {
        throw InputError(name + ": trace grids differ");
    }
    if (h0.a != 0.0) throw InputError(name + ": traces must start at t = 0");
}

void BoundaryTraces::validate() const {
    g.validate("x=0 traces");
    f.validate("x=L traces");
    if (g.h0.b != f.h0.b || g.h0.intervals() != f.h0.intervals()) {
        throw InputError("x=0 and x=L traces are on different time grids");
    }
}

double CornerReport::max() const {
    double m = 0.0;
    for (double x : mismatch) m = std::max(m, std::abs(x));
    return m;
}

CornerReport corner_compatibility(const InitialProfile& q0, const BoundaryTraces& tr) {
    const int n = q0.q.intervals();
    CornerReport r;
    r.mismatch[0] = tr.g.h0.v.front() - q0.q.derivative(0, 0);
    r.mismatch[1] = tr.g.h1.v.front() - q0.q.derivative(0, 1);
    r.mismatch[2] = tr.g.h2.v.front() - q0.q.derivative(0, 2);
    r.mismatch[3] = tr.f.h0.v.front() - q0.q.derivative(n, 0);
    r.mismatch[4] = tr.f.h1.v.front() - q0.q.derivative(n, 1);
    r.mismatch[5] = tr.f.h2.v.front() - q0.q.derivative(n, 2);
    return r;
}

}  // namespace mkdv
