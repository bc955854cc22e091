#pragma once

// Residuals of the global relation coupling s, S, S1 and q(., T).

#include <functional>
#include <vector>

#include "mkdv/spectral.hpp"

namespace mkdv {

/// c(k) = int_0^L e^{-2iky} (Q mu4)_12(y, T, k) dy by Gauss-Legendre on each data
/// cell, with mu4 carried along the row by the x-system.
cplx compute_c(const UniformSamples& q_T, cplx k, int lambda, const IntegratorOptions& opt = {},
               int gauss_points = 6);

/// Full 2x2 integral int_0^L e^{-iky sigma3-hat} (Q mu4)(y, T, k) dy.
Mat2C row_integral(const UniformSamples& q_T, cplx k, int lambda, const IntegratorOptions& opt = {},
                   int gauss_points = 6);

/// e^{-2ikL} conj(d(conj k)) B1 - (a B - b A) A1
cplx gr_lhs(const SpectralPoint& p);

/// Scalar finite-T residual gr_lhs + e^{8ik^3 T} c. Throws RangeError when
/// e^{8ik^3 T} or e^{-2ikL} leaves the guard.
cplx gr_residual_finite_T(const SpectralPoint& p, cplx c, double T);

/// gr_lhs at k strictly inside sector I, III or V; DomainError otherwise.
cplx gr_residual_T_inf(const SpectralPoint& p);

/// S^{-1} s [e^{-ikL sigma3-hat} S1] - I + e^{4ik^3 T sigma3-hat} (row integral).
Mat2C gr_matrix_residual(const SpectralPoint& p, const Mat2C& row_int, double T);

/// 32 real points on [-K, K] and 16 per ray arg k = pi/3, 2pi/3 with |k| in [R, K].
std::vector<cplx> default_gr_kset(double R, double K_max);

struct GRSample {
    cplx k;
    cplx residual;
    cplx c;
    bool clamped = false;
};

struct GRReport {
    std::vector<GRSample> samples;
    double max_abs = 0.0;
    double rms = 0.0;
    int clamped = 0;
    /// max over evaluated |k| >= 1 of |c(k)| |k| / (1 + |e^{-2ikL}|).
    double c_decay_constant = 0.0;
};

/// Finite-T residual over `ks`. Points where an exponential leaves the
/// guard are marked clamped and left out of the summaries.
GRReport gr_report(const SpectralData& spec, const UniformSamples& q_T, const std::vector<cplx>& ks);

}  // namespace mkdv
