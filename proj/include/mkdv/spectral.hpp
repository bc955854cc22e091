#pragma once

// Direct spectral maps: s(k) from q0, S(k) from the x = 0 traces,
// S1(k) from the x = L traces, and the scalar functions built from them.

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "mkdv/integrator.hpp"
#include "mkdv/lax.hpp"
#include "mkdv/sampled.hpp"

namespace mkdv {

/// Phi(0) for Phi_x = (ik sigma3 + Q) Phi, Phi(L) = e^{ikL sigma3}.
Mat2C compute_s(const InitialProfile& q0, cplx k, int lambda, const IntegratorOptions& opt = {});

/// Psi(0) for the t-system with the x = 0 traces, Psi(T) = e^{-4ik^3 T sigma3}.
Mat2C compute_S(const BoundaryTraces& tr, cplx k, const ModelParams& p, const IntegratorOptions& opt = {});

/// Same as compute_S with the x = L traces.
Mat2C compute_S1(const BoundaryTraces& tr, cplx k, const ModelParams& p, const IntegratorOptions& opt = {});

struct ScalarPair {
    cplx a;
    cplx b;
};

/// (m22, m12): the (a, b) pair of a spectral matrix [[conj a(conj k), b], [lambda conj b(conj k), a]].
inline ScalarPair scalar_entries(const Mat2C& m) { return {m.m22, m.m12}; }

/// gamma, Gamma, Gamma1, Gamma2 at one k.
struct GammaValues {
    cplx gamma;
    cplx Gamma;
    cplx Gamma1;
    cplx Gamma2;
};

/// Spectral matrices at one k and the scalar functions they determine.
/// A "bar" suffix means conj(f(conj k)), which is read off the matrix at k.
struct SpectralPoint {
    cplx k;
    int lambda = -1;
    double L = 1.0;
    Mat2C s, S, S1;

    SpectralPoint() = default;
    SpectralPoint(cplx k_, int lambda_, double L_, const Mat2C& s_, const Mat2C& S_, const Mat2C& S1_)
        : k(k_), lambda(lambda_), L(L_), s(s_), S(S_), S1(S1_) {}

    cplx a() const { return s.m22; }
    cplx b() const { return s.m12; }
    cplx abar() const { return s.m11; }
    cplx bbar() const { return static_cast<double>(lambda) * s.m21; }
    cplx A() const { return S.m22; }
    cplx B() const { return S.m12; }
    cplx Abar() const { return S.m11; }
    cplx Bbar() const { return static_cast<double>(lambda) * S.m21; }
    cplx A1() const { return S1.m22; }
    cplx B1() const { return S1.m12; }
    cplx A1bar() const { return S1.m11; }
    cplx B1bar() const { return static_cast<double>(lambda) * S1.m21; }

    /// a conj(A(conj k)) - lambda b conj(B(conj k))
    cplx d() const;
    /// a A1 + lambda e^{-2ikL} conj(b(conj k)) B1
    cplx d1() const;
    /// conj(d(conj k))
    cplx dbar() const;
    /// conj(d1(conj k))
    cplx d1bar() const;
};

/// Denominator floor 1e-12 (1 + |k|) unless overridden.
double default_gamma_floor(cplx k);

/// The four gamma functions at k. Throws SingularJumpError naming the
/// function and k when a denominator is below `floor`.
GammaValues gamma_fns(const SpectralPoint& p, std::optional<double> floor = std::nullopt);

/// conj(gamma(conj k)), conj(Gamma(conj k)), ... from the same point.
GammaValues gamma_fns_reflected(const SpectralPoint& p, std::optional<double> floor = std::nullopt);

/// Owns the data and memoizes SpectralPoint per k (bit-pattern key).
/// Safe for concurrent calls to at().
class SpectralData {
public:
    SpectralData(InitialProfile q0, BoundaryTraces tr, ModelParams p, IntegratorOptions opt = {});

    const ModelParams& params() const { return params_; }
    const InitialProfile& profile() const { return q0_; }
    const BoundaryTraces& traces() const { return tr_; }
    const IntegratorOptions& options() const { return opt_; }

    const SpectralPoint& at(cplx k) const;

    std::size_t cache_size() const;

private:
    struct KeyHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& key) const noexcept;
    };

    InitialProfile q0_;
    BoundaryTraces tr_;
    ModelParams params_;
    IntegratorOptions opt_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::unique_ptr<SpectralPoint>, KeyHash>
        cache_;
};

/// Data needed to evaluate mu_n away from the corners: q along the row t.
using RowProvider = std::function<const UniformSamples*(double t)>;

/// mu_n(x, t, k), n in 1..4, with corners (0,T), (0,0), (L,0), (L,T).
/// Integrates t along x = x_n, then x along the row t. The row is taken from
/// q0 when t = 0 and from `row` otherwise. Throws RangeError when an
/// exponential factor leaves the guard.
Mat2C eval_mu(int n, double x, double t, cplx k, const ModelParams& p, const InitialProfile& q0,
              const BoundaryTraces& tr, const RowProvider& row = {}, const IntegratorOptions& opt = {});

}  // namespace mkdv
