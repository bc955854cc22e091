#include "mkdv/lax.hpp"

#include <cmath>
#include <string>

#include "mkdv/errors.hpp"

namespace mkdv {

void ModelParams::validate() const {
    if (lambda != 1 && lambda != -1) {
        throw InputError("lambda must be +1 or -1, got " + std::to_string(lambda));
    }
    if (!(L > 0.0) || !std::isfinite(L)) throw InputError("L must be finite and positive");
    if (!(T > 0.0)) throw InputError("T must be positive");
}

void check_exponent(double re, const char* what) {
    if (!(std::abs(re) <= kExponentGuard)) {
        throw RangeError(std::string("exponent guard tripped for ") + what + ": |Re| = " +
                         std::to_string(std::abs(re)));
    }
}

Mat2C exp_sigma3(cplx theta) {
    check_exponent(theta.real(), "exp_sigma3");
    return Mat2C::diag(std::exp(theta), std::exp(-theta));
}

Mat2C sigma3_hat_conj(const Mat2C& a, cplx theta) {
    const cplx two_theta = 2.0 * theta;
    check_exponent(two_theta.real(), "sigma3_hat_conj");
    const cplx e = std::exp(two_theta);
    const cplx einv = std::exp(-two_theta);
    return {a.m11, a.m12 * e, a.m21 * einv, a.m22};
}

Mat2C build_Q(double q, int lambda) { return {0.0, q, lambda * q, 0.0}; }

Mat2C build_Qtilde(double q, double qx, double qxx, cplx k, int lambda) {
    const double lam = lambda;
    const double q2 = q * q;
    const double q3 = q2 * q;
    const cplx k2 = k * k;
    const cplx diag = -2.0 * kI * k * lam * q2;
    return {diag,
            -4.0 * k2 * q + 2.0 * kI * k * qx - 2.0 * lam * q3 + qxx,
            -4.0 * lam * k2 * q - 2.0 * kI * k * lam * qx - 2.0 * q3 + lam * qxx,
            -diag};
}

}  // namespace mkdv
