#include <doctest.h>

#include <Eigen/Dense>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "mkdv/errors.hpp"
#include "mkdv/oracle.hpp"
#include "mkdv/spectral.hpp"

using namespace mkdv;

namespace {

const WaveData& wave() {
    static const WaveData w = exact_traveling_wave(1.0, 0.5, -1, GridSpec{1.0, 0.5, 128, 512});
    return w;
}

const ModelParams kWaveParams{-1, 1.0, 0.5};

const std::vector<cplx> kProbe{{0.3, 0.0}, {-2.0, 0.0}, {1.5, 0.8}, {-0.7, 1.9}, {2.5, -1.1}, {0.0, -3.0}, {6.0, 0.0}};

InitialProfile constant_profile(double c, double L, int n) {
    return {UniformSamples::from_function(0.0, L, n, [c](double) { return c; })};
}

BoundaryTraces zero_traces(double T, int n) {
    auto z = UniformSamples::from_function(0.0, T, n, [](double) { return 0.0; });
    return {{z, z, z}, {z, z, z}};
}

/// [[conj a(conj k), b], [lambda conj b(conj k), a]] read at k and conj k.
double symmetry_defect(const Mat2C& at_k, const Mat2C& at_conj, int lambda) {
    const double e1 = std::abs(at_k.m11 - std::conj(at_conj.m22));
    const double e2 = std::abs(at_k.m21 - static_cast<double>(lambda) * std::conj(at_conj.m12));
    const double scale = std::max({1.0, std::abs(at_k.m11), std::abs(at_k.m21)});
    return std::max(e1, e2) / scale;
}

}  // namespace

TEST_CASE("zero data gives identity spectral matrices") {
    const InitialProfile q0 = constant_profile(0.0, 1.0, 16);
    const BoundaryTraces tr = zero_traces(1.0, 16);
    for (int lambda : {-1, 1}) {
        const ModelParams p{lambda, 1.0, 1.0};
        for (cplx k : kProbe) {
            CHECK(max_abs_diff(compute_s(q0, k, lambda), Mat2C::identity()) < 1e-12);
            CHECK(max_abs_diff(compute_S(tr, k, p), Mat2C::identity()) < 1e-12);
            CHECK(max_abs_diff(compute_S1(tr, k, p), Mat2C::identity()) < 1e-12);
        }
    }
}

TEST_CASE("compute_s matches the constant-coefficient matrix exponential") {
    const double c = 0.5;
    const double L = 1.0;
    const InitialProfile q0 = constant_profile(c, L, 32);
    for (int lambda : {-1, 1}) {
        for (int i = 0; i < 20; ++i) {
            const cplx k = std::polar(0.5 + 0.6 * i, std::numbers::pi * (i % 6) / 3.0 + 0.1 * (i % 2));
            Eigen::Matrix2cd A;
            A << cplx(0.0, 1.0) * k, c, lambda * c, -cplx(0.0, 1.0) * k;
            Eigen::Matrix2cd E0;
            E0 << std::exp(cplx(0.0, 1.0) * k * L), 0.0, 0.0, std::exp(-cplx(0.0, 1.0) * k * L);
            const Eigen::Matrix2cd ref = (-A * L).exp() * E0;
            const Mat2C s = compute_s(q0, k, lambda);
            const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
            CHECK(std::abs(s.m11 - ref(0, 0)) / scale < 1e-8);
            CHECK(std::abs(s.m12 - ref(0, 1)) / scale < 1e-8);
            CHECK(std::abs(s.m21 - ref(1, 0)) / scale < 1e-8);
            CHECK(std::abs(s.m22 - ref(1, 1)) / scale < 1e-8);
        }
    }
}

TEST_CASE("spectral matrices of the wave have unit determinant and the conjugation symmetry") {
    // S and S1 are representable where Im k^3 = 0; off the rays e^{8 |Im k^3| T} swamps them.
    const WaveData& w = wave();
    std::vector<cplx> ks;
    for (int j = 0; j < 6; ++j) {
        for (double r : {0.5, 1.0, 3.0, 7.0, 12.0}) ks.push_back(std::polar(r, j * std::numbers::pi / 3.0));
        ks.push_back(std::polar(1.0, (j + 0.5) * std::numbers::pi / 3.0));
    }
    for (cplx k : ks) {
        const Mat2C s = compute_s(w.q0, k, -1);
        const Mat2C S = compute_S(w.traces, k, kWaveParams);
        const Mat2C S1 = compute_S1(w.traces, k, kWaveParams);
        CHECK(std::abs(s.det() - 1.0) < 1e-9);
        CHECK(std::abs(S.det() - 1.0) < 1e-9);
        CHECK(std::abs(S1.det() - 1.0) < 1e-9);
        CHECK(symmetry_defect(s, compute_s(w.q0, std::conj(k), -1), -1) < 1e-9);
        CHECK(symmetry_defect(S, compute_S(w.traces, std::conj(k), kWaveParams), -1) < 1e-9);
        CHECK(symmetry_defect(S1, compute_S1(w.traces, std::conj(k), kWaveParams), -1) < 1e-9);
    }
}

TEST_CASE("eigenfunctions are normalized at their corners") {
    const WaveData& w = wave();
    const cplx k{1.2, 0.4};
    CHECK(max_abs_diff(eval_mu(2, 0.0, 0.0, k, kWaveParams, w.q0, w.traces), Mat2C::identity()) < 1e-14);
    CHECK(max_abs_diff(eval_mu(3, 1.0, 0.0, k, kWaveParams, w.q0, w.traces), Mat2C::identity()) < 1e-14);
    CHECK(max_abs_diff(eval_mu(1, 0.0, 0.5, k, kWaveParams, w.q0, w.traces), Mat2C::identity()) < 1e-14);
    CHECK_THROWS_AS(eval_mu(5, 0.0, 0.0, k, kWaveParams, w.q0, w.traces), InputError);
}

TEST_CASE("eigenfunctions are related through s, S and S1") {
    const WaveData& w = wave();
    for (cplx k : {cplx(1.2, 0.4), cplx(-0.8, -0.5), cplx(2.0, 0.0)}) {
        for (double x : {0.0, 0.35, 0.8}) {
            const Mat2C mu1 = eval_mu(1, x, 0.0, k, kWaveParams, w.q0, w.traces);
            const Mat2C mu2 = eval_mu(2, x, 0.0, k, kWaveParams, w.q0, w.traces);
            const Mat2C mu3 = eval_mu(3, x, 0.0, k, kWaveParams, w.q0, w.traces);
            const Mat2C mu4 = eval_mu(4, x, 0.0, k, kWaveParams, w.q0, w.traces);
            const cplx th = PhaseArgs{k, x, 0.0}.theta();
            const cplx thL = cplx(0.0, -1.0) * k * 1.0;
            const Mat2C s = compute_s(w.q0, k, -1);
            const Mat2C S = compute_S(w.traces, k, kWaveParams);
            const Mat2C S1 = compute_S1(w.traces, k, kWaveParams);
            CHECK(max_abs_diff(mu3, mu2 * sigma3_hat_conj(s, th)) < 1e-9);
            CHECK(max_abs_diff(mu1, mu2 * sigma3_hat_conj(S, th)) < 1e-9);
            CHECK(max_abs_diff(mu4, mu3 * sigma3_hat_conj(sigma3_hat_conj(S1, thL), th)) < 1e-9);
        }
    }
}

TEST_CASE("a and b are analytic: Cauchy integral on a circle reproduces the centre value") {
    const WaveData& w = wave();
    const cplx centre{0.4, 0.3};
    const int n = 64;
    cplx ia = 0.0;
    cplx ib = 0.0;
    for (int j = 0; j < n; ++j) {
        const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
        const Mat2C s = compute_s(w.q0, centre + e, -1);
        // (1/2 pi i) oint f / (z - c) dz with dz = i e dphi
        ia += s.m22 / static_cast<double>(n);
        ib += s.m12 / static_cast<double>(n);
    }
    const Mat2C sc = compute_s(w.q0, centre, -1);
    CHECK(std::abs(ia - sc.m22) < 1e-9);
    CHECK(std::abs(ib - sc.m12) < 1e-9);
}

TEST_CASE("gamma_fns agree with the ratio forms built from B/A and B1/A1") {
    const WaveData& w = wave();
    SpectralData spec(w.q0, w.traces, kWaveParams);
    const double lam = -1.0;
    for (cplx k : {cplx(2.0, 0.0), cplx(1.5, 2.4), cplx(-3.0, 0.0), cplx(-1.0, 1.6)}) {
        const SpectralPoint& p = spec.at(k);
        const GammaValues g = gamma_fns(p);
        const cplx e = std::exp(cplx(0.0, -2.0) * k * p.L);
        const cplx rb = p.Bbar() / p.Abar();
        const cplx r1 = p.B1() / p.A1();
        const cplx a = p.a();
        const cplx b = p.b();
        CHECK(std::abs(g.gamma - b / p.abar()) < 1e-13);
        CHECK(std::abs(g.Gamma - lam * rb / (a * (a - lam * b * rb))) < 1e-10);
        const cplx den = a + lam * e * p.bbar() * r1;
        CHECK(std::abs(g.Gamma1 - e * a * r1 / den) < 1e-10 * (1.0 + std::abs(g.Gamma1)));
        CHECK(std::abs(g.Gamma2 - a * (e * p.abar() * r1 + b) / den) < 1e-10 * (1.0 + std::abs(g.Gamma2)));

        const SpectralPoint& pc = spec.at(std::conj(k));
        const GammaValues gc = gamma_fns(pc);
        const GammaValues gr = gamma_fns_reflected(p);
        CHECK(std::abs(gr.gamma - std::conj(gc.gamma)) < 1e-9 * (1.0 + std::abs(gr.gamma)));
        CHECK(std::abs(gr.Gamma - std::conj(gc.Gamma)) < 1e-9 * (1.0 + std::abs(gr.Gamma)));
        CHECK(std::abs(gr.Gamma1 - std::conj(gc.Gamma1)) < 1e-9 * (1.0 + std::abs(gr.Gamma1)));
        CHECK(std::abs(gr.Gamma2 - std::conj(gc.Gamma2)) < 1e-9 * (1.0 + std::abs(gr.Gamma2)));
    }
}

TEST_CASE("gamma_fns: vanishing boundary ratios leave Gamma2 = b") {
    const cplx k{1.0, 0.5};
    const Mat2C s{cplx(0.9, 0.1), cplx(0.2, -0.3), cplx(0.1, 0.05), cplx(0.8, 0.2)};
    const SpectralPoint p(k, -1, 1.0, s, Mat2C::identity(), Mat2C::identity());
    const GammaValues g = gamma_fns(p);
    CHECK(g.Gamma == cplx(0.0));
    CHECK(g.Gamma1 == cplx(0.0));
    CHECK(std::abs(g.Gamma2 - p.b()) < 1e-15);
}

TEST_CASE("gamma_fns reports a vanishing denominator") {
    const Mat2C s{0.0, 1.0, 1.0, 0.0};
    const SpectralPoint p(cplx(2.0, 0.0), -1, 1.0, s, Mat2C::identity(), Mat2C::identity());
    CHECK_THROWS_AS(gamma_fns(p), SingularJumpError);
    try {
        gamma_fns(p);
    } catch (const SingularJumpError& e) {
        CHECK(std::string(e.what()).find("k =") != std::string::npos);
    }
}

TEST_CASE("SpectralData memoizes per k and validates the data") {
    const WaveData& w = wave();
    SpectralData spec(w.q0, w.traces, kWaveParams);
    const SpectralPoint& p1 = spec.at({1.0, 0.5});
    const SpectralPoint& p2 = spec.at({1.0, 0.5});
    CHECK(&p1 == &p2);
    CHECK(spec.cache_size() == 1);
    CHECK_THROWS_AS(SpectralData(w.q0, w.traces, ModelParams{-1, 2.0, 0.5}), InputError);
    CHECK_THROWS_AS(SpectralData(w.q0, w.traces, ModelParams{-1, 1.0, 0.7}), InputError);
}
