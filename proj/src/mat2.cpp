#include "mkdv/mat2.hpp"

#include <algorithm>
#include <cmath>

#include "mkdv/errors.hpp"

namespace mkdv {

Mat2C Mat2C::inverse() const {
    const cplx d = det();
    if (d == 0.0 || !std::isfinite(std::abs(d))) {
        throw NumericalError("Mat2C::inverse: singular matrix");
    }
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
}

double Mat2C::max_abs() const {
    return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

bool Mat2C::is_finite() const {
    auto ok = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    return ok(m11) && ok(m12) && ok(m21) && ok(m22);
}

Mat2C& Mat2C::operator+=(const Mat2C& o) {
    m11 += o.m11;
    m12 += o.m12;
    m21 += o.m21;
    m22 += o.m22;
    return *this;
}

Mat2C& Mat2C::operator-=(const Mat2C& o) {
    m11 -= o.m11;
    m12 -= o.m12;
    m21 -= o.m21;
    m22 -= o.m22;
    return *this;
}

Mat2C& Mat2C::operator*=(cplx s) {
    m11 *= s;
    m12 *= s;
    m21 *= s;
    m22 *= s;
    return *this;
}

double max_abs_diff(const Mat2C& a, const Mat2C& b) { return (a - b).max_abs(); }

Mat2C expm_traceless(const Mat2C& a) {
    // A^2 = w^2 I with w^2 = -det A, so exp(A) = cosh(w) I + sinh(w)/w A.
    const cplx w2 = -a.det();
    const cplx w = std::sqrt(w2);
    cplx ch;
    cplx shc;
    if (std::abs(w) < 1e-3) {
        // Series keeps sinh(w)/w accurate near w = 0.
        ch = 1.0 + w2 / 2.0 * (1.0 + w2 / 12.0 * (1.0 + w2 / 30.0));
        shc = 1.0 + w2 / 6.0 * (1.0 + w2 / 20.0 * (1.0 + w2 / 42.0));
    } else {
        ch = std::cosh(w);
        shc = std::sinh(w) / w;
    }
    return {ch + shc * a.m11, shc * a.m12, shc * a.m21, ch + shc * a.m22};
}

Mat2C expm(const Mat2C& a) {
    const cplx half_tr = 0.5 * a.trace();
    Mat2C b = a;
    b.m11 -= half_tr;
    b.m22 -= half_tr;
    return expm_traceless(b) * std::exp(half_tr);
}

}  // namespace mkdv
