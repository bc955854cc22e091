#pragma once

// Lax-pair coefficient matrices and sigma_3 conjugation calculus for
//   q_t - q_xxx + 6 lambda q^2 q_x = 0,   lambda = +-1.

#include "mkdv/mat2.hpp"

namespace mkdv {

/// Largest modulus of a real exponent we are prepared to exponentiate.
inline constexpr double kExponentGuard = 700.0;

/// Problem constants. The time horizon is finite for every evaluation
/// except the T = infinity global-relation residual.
struct ModelParams {
    int lambda = -1;
    double L = 1.0;
    double T = 1.0;

    /// Throws InputError on lambda not in {+1,-1}, L <= 0 or T <= 0.
    void validate() const;
};

/// Spectral parameter and the space-time point of an exponential e^{i(kx-4k^3t)}.
struct PhaseArgs {
    cplx k;
    double x = 0.0;
    double t = 0.0;

    /// i (k x - 4 k^3 t)
    cplx theta() const { return kI * (k * x - 4.0 * k * k * k * t); }
};

/// Throws RangeError when |re| exceeds kExponentGuard. `what` names the factor.
void check_exponent(double re, const char* what);

/// diag(e^theta, e^-theta), guarded.
Mat2C exp_sigma3(cplx theta);

/// e^{theta sigma3} A e^{-theta sigma3}: m12 scaled by e^{2 theta}, m21 by e^{-2 theta}.
Mat2C sigma3_hat_conj(const Mat2C& a, cplx theta);

/// [[0, q], [lambda q, 0]]
Mat2C build_Q(double q, int lambda);

/// -4k^2 Q - 2ik(Q^2 + Q_x) sigma3 - 2 Q^3 + Q_xx, assembled in closed form
/// using Q^2 = lambda q^2 I.
Mat2C build_Qtilde(double q, double qx, double qxx, cplx k, int lambda);

}  // namespace mkdv
