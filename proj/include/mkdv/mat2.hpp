#pragma once

#include <complex>

namespace mkdv {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Dense 2x2 complex matrix. Value type for eigenfunctions, spectral
/// matrices and jumps.
struct Mat2C {
    cplx m11{}, m12{}, m21{}, m22{};

    static constexpr Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2C zero() { return {}; }
    static constexpr Mat2C diag(cplx a, cplx b) { return {a, 0.0, 0.0, b}; }

    cplx det() const { return m11 * m22 - m12 * m21; }
    cplx trace() const { return m11 + m22; }

    /// Throws NumericalError when det is exactly zero or not finite.
    Mat2C inverse() const;

    /// Entrywise complex conjugate.
    Mat2C conj() const { return {std::conj(m11), std::conj(m12), std::conj(m21), std::conj(m22)}; }
    Mat2C transpose() const { return {m11, m21, m12, m22}; }
    /// Conjugate transpose.
    Mat2C adjoint() const { return conj().transpose(); }

    /// Largest entry modulus.
    double max_abs() const;
    bool is_finite() const;

    Mat2C& operator+=(const Mat2C& o);
    Mat2C& operator-=(const Mat2C& o);
    Mat2C& operator*=(cplx s);

    bool operator==(const Mat2C&) const = default;
};

inline Mat2C operator+(Mat2C a, const Mat2C& b) { return a += b; }
inline Mat2C operator-(Mat2C a, const Mat2C& b) { return a -= b; }
inline Mat2C operator-(const Mat2C& a) { return {-a.m11, -a.m12, -a.m21, -a.m22}; }
inline Mat2C operator*(Mat2C a, cplx s) { return a *= s; }
inline Mat2C operator*(cplx s, Mat2C a) { return a *= s; }

inline Mat2C operator*(const Mat2C& a, const Mat2C& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

inline Mat2C commutator(const Mat2C& a, const Mat2C& b) { return a * b - b * a; }

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Mat2C& a, const Mat2C& b);

/// exp(A) for trace-free A, using A^2 = -det(A) I. The result has unit
/// determinant up to rounding.
Mat2C expm_traceless(const Mat2C& a);

/// exp(A) for general A (splits off the trace).
Mat2C expm(const Mat2C& a);

}  // namespace mkdv
