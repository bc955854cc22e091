#include <doctest.h>

#include <numbers>

#include "mkdv/errors.hpp"
#include "mkdv/global_relation.hpp"
#include "mkdv/oracle.hpp"

using namespace mkdv;

namespace {

const WaveData& wave() {
    static const WaveData w = exact_traveling_wave(1.0, 0.5, -1, GridSpec{1.0, 0.5, 128, 512});
    return w;
}

const ModelParams kWaveParams{-1, 1.0, 0.5};

BoundaryTraces zero_traces(double T, int n) {
    auto z = UniformSamples::from_function(0.0, T, n, [](double) { return 0.0; });
    return {{z, z, z}, {z, z, z}};
}

}  // namespace

TEST_CASE("default_gr_kset: 32 real points and 16 on each upper ray") {
    const auto ks = default_gr_kset(1.0, 12.0);
    REQUIRE(ks.size() == 64);
    int real = 0;
    int r1 = 0;
    int r2 = 0;
    for (cplx k : ks) {
        if (k.imag() == 0.0) {
            ++real;
            CHECK(std::abs(k.real()) <= 12.0 + 1e-12);
            continue;
        }
        CHECK(std::abs(k) >= 1.0 - 1e-12);
        CHECK(std::abs(k) <= 12.0 + 1e-12);
        const double arg = std::arg(k);
        if (std::abs(arg - std::numbers::pi / 3.0) < 1e-12) ++r1;
        if (std::abs(arg - 2.0 * std::numbers::pi / 3.0) < 1e-12) ++r2;
    }
    CHECK(real == 32);
    CHECK(r1 == 16);
    CHECK(r2 == 16);
}

TEST_CASE("zero data: c and every residual vanish exactly") {
    const InitialProfile q0{UniformSamples::from_function(0.0, 1.0, 16, [](double) { return 0.0; })};
    SpectralData spec(q0, zero_traces(1.0, 16), ModelParams{-1, 1.0, 1.0});
    const GRReport r = gr_report(spec, q0.q, default_gr_kset(1.0, 12.0));
    CHECK(r.max_abs == 0.0);
    CHECK(r.clamped == 0);
    for (const auto& s : r.samples) CHECK(s.c == cplx(0.0));
}

TEST_CASE("c(k) agrees with its Born approximation for small data") {
    const double eps = 1e-3;
    auto f = [](double y) { return std::exp(-4.0 * (y - 0.4) * (y - 0.4)); };
    const UniformSamples q = UniformSamples::from_function(0.0, 1.0, 256, [&](double y) { return eps * f(y); });
    for (cplx k : {cplx(0.5, 0.0), cplx(3.0, 0.0), cplx(1.0, 1.7)}) {
        // eps int_0^1 e^{-2iky} f(y) dy by composite Simpson on a fine grid.
        const int n = 4000;
        cplx born = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double y = static_cast<double>(i) / n;
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            born += w * std::exp(cplx(0.0, -2.0) * k * y) * f(y);
        }
        born *= eps / (3.0 * n);
        const cplx c = compute_c(q, k, -1);
        const double scale = std::abs(born);
        // second-order terms vanish; the remainder is O(eps^3) relative to O(eps)
        CHECK(std::abs(c - born) < 1e-5 * scale);
    }
}

TEST_CASE("global relation holds for the wave and fails for mismatched traces") {
    const WaveData& w = wave();
    SpectralData spec(w.q0, w.traces, kWaveParams);
    const std::vector<cplx> ks{{0.5, 0.0}, {-2.0, 0.0}, {4.0, 0.0}, std::polar(2.0, std::numbers::pi / 3.0),
                               std::polar(3.0, 2.0 * std::numbers::pi / 3.0)};
    const GRReport good = gr_report(spec, w.q_T, ks);
    CHECK(good.max_abs < 1e-6);
    CHECK(good.clamped == 0);

    SpectralData bad(w.q0, zero_traces(0.5, 512), kWaveParams);
    const GRReport r = gr_report(bad, w.q_T, ks);
    CHECK(r.max_abs > 1e-1);
}

TEST_CASE("matrix form of the global relation holds for the wave") {
    const WaveData& w = wave();
    SpectralData spec(w.q0, w.traces, kWaveParams);
    for (cplx k : {cplx(1.0, 0.0), cplx(-3.0, 0.0), std::polar(1.5, std::numbers::pi / 3.0)}) {
        const SpectralPoint& p = spec.at(k);
        const Mat2C ri = row_integral(w.q_T, k, -1);
        CHECK(max_abs_diff(gr_matrix_residual(p, ri, 0.5), Mat2C::zero()) < 1e-6);
        CHECK(std::abs(ri.m12 - compute_c(w.q_T, k, -1)) < 1e-14);
    }
}

TEST_CASE("points out of the exponent guard are clamped, not summarized") {
    const WaveData& w = wave();
    SpectralData spec(w.q0, w.traces, kWaveParams);
    const GRReport r = gr_report(spec, w.q_T, {cplx(1.0, 0.0), cplx(0.0, 30.0)});
    CHECK(r.clamped == 1);
    CHECK(r.samples.size() == 2);
    CHECK(r.samples[1].clamped);
}

TEST_CASE("infinite-horizon residual is defined only inside I, III, V") {
    const WaveData& w = wave();
    SpectralData spec(w.q0, w.traces, kWaveParams);
    CHECK_NOTHROW(gr_residual_T_inf(spec.at(std::polar(1.5, 0.5))));
    CHECK_NOTHROW(gr_residual_T_inf(spec.at(std::polar(1.5, -std::numbers::pi / 2.0))));
    CHECK_THROWS_AS(gr_residual_T_inf(spec.at(std::polar(1.5, std::numbers::pi / 2.0))), DomainError);
    CHECK_THROWS_AS(gr_residual_T_inf(spec.at(cplx(2.0, 0.0))), DomainError);
}

TEST_CASE("c(k) decay constant is stable between two shells on the upper rays") {
    const WaveData& w = wave();
    for (double ang : {std::numbers::pi / 3.0, 2.0 * std::numbers::pi / 3.0, 0.0}) {
        auto fit = [&](double r0, double r1) {
            double worst = 0.0;
            for (int i = 0; i < 8; ++i) {
                const cplx k = std::polar(r0 + (r1 - r0) * i / 7.0, ang);
                const double env = (1.0 + std::exp(2.0 * k.imag())) / std::abs(k);
                worst = std::max(worst, std::abs(compute_c(w.q_T, k, -1)) / env);
            }
            return worst;
        };
        const double c1 = fit(10.0, 50.0);
        const double c2 = fit(50.0, 100.0);
        CHECK(c1 > 0.0);
        CHECK(c2 / c1 < 2.0);
        CHECK(c1 / c2 < 2.0);
    }
}
