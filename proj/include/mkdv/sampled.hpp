#pragma once

// Equispaced samples of the initial profile and the boundary traces.

#include <array>
#include <string>
#include <vector>

namespace mkdv {

/// Real samples v[0..n] of a function on [a, b] at a + i (b - a) / n.
struct UniformSamples {
    double a = 0.0;
    double b = 1.0;
    std::vector<double> v;

    UniformSamples() = default;
    UniformSamples(double a_, double b_, std::vector<double> v_);

    /// Samples f at n + 1 equispaced points.
    template <class F>
    static UniformSamples from_function(double a, double b, int n, F&& f) {
        std::vector<double> v(n + 1);
        for (int i = 0; i <= n; ++i) v[i] = f(a + (b - a) * i / n);
        return {a, b, std::move(v)};
    }

    int intervals() const { return static_cast<int>(v.size()) - 1; }
    double h() const { return (b - a) / intervals(); }
    double node(int i) const { return a + (b - a) * i / intervals(); }

    /// Piecewise-cubic Lagrange interpolant (stencil shifted inward at the ends).
    double operator()(double x) const;

    /// m-th derivative (m = 0, 1, 2) at node i with a fourth-order stencil,
    /// one-sided near the ends.
    double derivative(int i, int m) const;

    double max_abs() const;

    /// Throws InputError unless there are >= min_intervals intervals, b > a
    /// and every sample is finite. `name` labels the message.
    void validate(const std::string& name, int min_intervals = 1) const;
};

/// q(x, 0) on [0, L].
struct InitialProfile {
    UniformSamples q;

    double L() const { return q.b; }
    /// Also checks N_x >= 8 and max |second difference| <= max_second_difference.
    void validate(double max_second_difference = 1.0) const;
};

/// (q, q_x, q_xx) sampled in t on [0, T] at a fixed x.
struct TraceSet {
    UniformSamples h0, h1, h2;

    void validate(const std::string& name) const;
};

/// Traces at x = 0 (g) and at x = L (f).
struct BoundaryTraces {
    TraceSet g;
    TraceSet f;

    double T() const { return g.h0.b; }
    void validate() const;
};

/// Corner mismatches g0(0)-q0(0), g1(0)-q0'(0), g2(0)-q0''(0), then the same at x = L.
struct CornerReport {
    std::array<double, 6> mismatch{};

    double max() const;
    bool compatible(double tol) const { return max() <= tol; }
};

CornerReport corner_compatibility(const InitialProfile& q0, const BoundaryTraces& tr);

}  // namespace mkdv
