#include <doctest.h>

#include <numbers>

#include "mkdv/contour.hpp"
#include "mkdv/errors.hpp"

using namespace mkdv;

namespace {

constexpr double kPi = std::numbers::pi;

/// Region signs by sector: outside the disk I, III, V are "+",
/// inside the disk the pattern is reversed.
int sector_sign(cplx k, double R) {
    double arg = std::arg(k);
    if (arg < 0.0) arg += 2.0 * kPi;
    const int sector = static_cast<int>(arg / (kPi / 3.0));
    const int outside = (sector % 2 == 0) ? 1 : -1;
    return std::abs(k) > R ? outside : -outside;
}

ZeroTargets targets(std::function<cplx(cplx)> a, std::function<cplx(cplx)> d, std::function<cplx(cplx)> d1) {
    return {std::move(a), std::move(d), std::move(d1)};
}

cplx one(cplx) { return 1.0; }

}  // namespace

TEST_CASE("build_sigma: node count and gap-free panels") {
    const ContourSigma c = build_sigma(1.0, 9.0, 2, 8);
    const int circle_panels = 6 * static_cast<int>(std::ceil(2.0 * kPi / 3.0));
    CHECK(c.size() == static_cast<std::size_t>(6 * 16 * 8 + circle_panels * 8));
    CHECK(c.segments.size() == 12);

    // Node weights integrate arc length exactly on every segment.
    std::vector<double> len(c.segments.size(), 0.0);
    for (const auto& n : c.nodes) len[n.segment] += std::abs(n.w);
    for (std::size_t s = 0; s < c.segments.size(); ++s) {
        const double expect = c.segments[s].kind == SegmentKind::Ray ? 8.0 : kPi / 3.0;
        CHECK(len[s] == doctest::Approx(expect).epsilon(1e-13));
    }
    for (std::size_t p = 1; p < c.panels.size(); ++p) {
        if (c.panels[p].segment == c.panels[p - 1].segment) CHECK(std::abs(c.panels[p].a - c.panels[p - 1].b) < 1e-14);
    }
}

TEST_CASE("build_sigma: circle only when K_max equals R") {
    const ContourSigma c = build_sigma(1.0, 1.0, 2, 8);
    for (const auto& s : c.segments) CHECK(s.kind == SegmentKind::Arc);
    CHECK(c.segments.size() == 6);
}

TEST_CASE("build_sigma rejects bad parameters") {
    CHECK_THROWS_AS(build_sigma(0.0, 2.0, 2, 8), InputError);
    CHECK_THROWS_AS(build_sigma(2.0, 1.0, 2, 8), InputError);
    CHECK_THROWS_AS(build_sigma(1.0, 2.0, 0, 8), InputError);
    CHECK_THROWS_AS(build_sigma(1.0, 2.0, 2, 1), InputError);
}

TEST_CASE("the + side lies to the left of travel and matches the sector signs") {
    const ContourSigma c = build_sigma(1.5, 6.0, 2, 4);
    for (std::size_t p = 0; p < c.panels.size(); ++p) {
        for (double tau : {-0.5, 0.3}) {
            const cplx s = c.panel_point(static_cast<int>(p), tau);
            cplx v = c.panel_velocity(static_cast<int>(p), tau);
            v /= std::abs(v);
            const cplx left = s + 1e-7 * cplx(0.0, 1.0) * v;
            const cplx right = s - 1e-7 * cplx(0.0, 1.0) * v;
            CHECK(sector_sign(left, 1.5) == 1);
            CHECK(sector_sign(right, 1.5) == -1);
            CHECK(region_sign(left, 1.5) == 1);
            CHECK(region_sign(right, 1.5) == -1);
        }
    }
}

TEST_CASE("lower-half nodes are exact conjugates of their mirror nodes") {
    const ContourSigma c = build_sigma(1.0, 5.0, 2, 8);
    std::vector<cplx> upper;
    std::vector<cplx> lower;
    for (const auto& n : c.nodes) {
        if (n.s.imag() > 0.0) upper.push_back(n.s);
        if (n.s.imag() < 0.0) lower.push_back(std::conj(n.s));
    }
    REQUIRE(upper.size() == lower.size());
    auto less = [](cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); };
    std::sort(upper.begin(), upper.end(), less);
    std::sort(lower.begin(), lower.end(), less);
    for (std::size_t i = 0; i < upper.size(); ++i) CHECK(upper[i] == lower[i]);
}

TEST_CASE("sector_of and distance_to_ray_angle") {
    CHECK(sector_of(std::polar(1.0, 0.2)) == 0);
    CHECK(sector_of(std::polar(1.0, 1.6)) == 1);
    CHECK(sector_of(std::polar(1.0, -0.2)) == 5);
    CHECK(sector_of(std::polar(1.0, -1.6)) == 4);
    CHECK(distance_to_ray_angle(std::polar(2.0, kPi / 3.0 + 0.1)) == doctest::Approx(0.1));
}

TEST_CASE("count_zeros finds zeros in their own regions only") {
    const cplx za{0.3, -2.0};                          // lower half-disk
    const cplx zd = std::polar(1.5, -kPi / 6.0);      // sector VI
    const cplx zd1 = std::polar(1.2, -kPi / 2.0);     // sector V
    const cplx zu{0.0, 0.8};                          // upper half: never counted
    const ZeroTargets f = targets([&](cplx k) { return (k - za) * (k - zu); }, [&](cplx k) { return k - zd; },
                                  [&](cplx k) { return k - zd1; });
    CHECK(count_zeros(f, 1.0) == ZeroCount{0, 0, 0});
    CHECK(count_zeros(f, 1.4) == ZeroCount{0, 0, 1});
    CHECK(count_zeros(f, 1.7) == ZeroCount{0, 1, 1});
    CHECK(count_zeros(f, 2.5) == ZeroCount{1, 1, 1});
}

TEST_CASE("choose_R encloses every zero with margin") {
    const ZeroTargets f = targets([](cplx k) { return k + cplx(0.0, 2.0); }, one, one);
    const double R = choose_R(f, 1.0);
    CHECK(R / 1.1 > 2.0);
    CHECK(count_zeros(f, R).a == 1);

    const ZeroTargets none = targets(one, one, one);
    CHECK(choose_R(none, 1.0) == 1.0);

    ChooseROptions opt;
    opt.cap = 2.0;
    const ZeroTargets near_cap = targets([](cplx k) { return k + cplx(0.0, 1.9); }, one, one);
    CHECK_THROWS_AS(choose_R(near_cap, 1.0, opt), ConfigError);
}

TEST_CASE("choose_R shrinks the scan circle past evaluation failures") {
    // Evaluation fails beyond |k| = 5, as for S(k) far off the rays.
    auto guarded = [](cplx k) -> cplx {
        if (std::abs(k) > 5.0) throw RangeError("test: out of range");
        return k - cplx(0.5, -2.1);
    };
    const ZeroTargets f = targets(guarded, one, one);
    const double R = choose_R(f, 1.0);
    CHECK(R / 1.1 > std::abs(cplx(0.5, -2.1)));
    CHECK(R * 1.25 <= 5.0);
}
