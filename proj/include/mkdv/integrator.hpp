#pragma once

// Fourth-order Magnus stepping for the x- and t-parts of the Lax pair,
// in the un-conjugated frame Phi_x = (ik sigma3 + Q) Phi,
// Psi_t = (-4ik^3 sigma3 + Qtilde) Psi.

#include <functional>

#include "mkdv/mat2.hpp"
#include "mkdv/sampled.hpp"

namespace mkdv {

struct IntegratorOptions {
    /// Per-step accuracy proxy: steps satisfy h * |A| <= (720 tol)^(1/5).
    double tol = 1e-10;
    /// When positive, overrides step control with this many steps per data cell.
    int steps_per_cell = 0;
    long max_steps = 50'000'000;
};

using Generator = std::function<Mat2C(double)>;

/// n equal Magnus steps of Y' = A(s) Y from s0 to s1 (either direction).
Mat2C magnus_propagate(const Generator& a, double s0, double s1, const Mat2C& y0, long n);

/// Step count for a span of length `span` covering `cells` data cells with
/// generator norm bounded by `norm`.
long magnus_steps(double span, int cells, double norm, const IntegratorOptions& opt);

/// Phi(x1) from Phi(x0) = y0 for the x-system with q interpolated from samples.
Mat2C integrate_x_system(const UniformSamples& q, cplx k, int lambda, double x0, double x1,
                         const Mat2C& y0, const IntegratorOptions& opt = {});

/// Psi(t1) from Psi(t0) = y0 for the t-system at the fixed x where `tr` was taken.
Mat2C integrate_t_system(const TraceSet& tr, cplx k, int lambda, double t0, double t1,
                         const Mat2C& y0, const IntegratorOptions& opt = {});

}  // namespace mkdv
