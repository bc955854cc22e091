#include "mkdv/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mkdv/errors.hpp"
#include "mkdv/quadrature.hpp"

namespace mkdv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kThird = kPi / 3.0;

double arg_2pi(cplx k) {
    double a = std::arg(k);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

}  // namespace

int sector_of(cplx k) {
    const int j = static_cast<int>(std::floor(arg_2pi(k) / kThird));
    return std::clamp(j, 0, 5);
}

int region_sign(cplx k, double R) {
    const bool outside = std::abs(k) > R;
    const bool odd = (sector_of(k) % 2) == 1;
    return (outside != odd) ? 1 : -1;
}

double distance_to_ray_angle(cplx k) {
    const double a = arg_2pi(k);
    const double r = std::fmod(a, kThird);
    return std::min(r, kThird - r);
}

namespace {

/// The upper-half segment whose conjugate is `seg` (lower-half segments only).
Segment mirror_of(const Segment& seg) {
    Segment m = seg;
    if (seg.kind == SegmentKind::Ray) {
        m.index = 6 - seg.index;
    } else {
        m.index = 5 - seg.index;
        m.direction = -seg.direction;
    }
    return m;
}

cplx ray_unit(int j) {
    if (j == 0) return 1.0;
    if (j == 3) return -1.0;
    return std::polar(1.0, j * kThird);
}

}  // namespace

cplx Segment::point(double u) const {
    // Lower-half points are exact conjugates of their mirror images, so
    // spectral data cached at the upper node serves both.
    if (!upper()) return std::conj(mirror_of(*this).point(u));
    if (kind == SegmentKind::Ray) {
        const double r = (direction > 0) ? R + u * (K - R) : K - u * (K - R);
        return ray_unit(index) * r;
    }
    const double phi = (direction > 0) ? index * kThird + u * kThird : (index + 1) * kThird - u * kThird;
    return std::polar(R, phi);
}

cplx Segment::velocity(double u) const {
    if (!upper()) return std::conj(mirror_of(*this).velocity(u));
    if (kind == SegmentKind::Ray) {
        return ray_unit(index) * static_cast<double>(direction) * (K - R);
    }
    return kI * static_cast<double>(direction) * kThird * point(u);
}

double Segment::length() const { return kind == SegmentKind::Ray ? K - R : R * kThird; }

bool Segment::upper() const { return kind == SegmentKind::Ray ? index <= 3 : index <= 2; }

cplx ContourSigma::panel_point(int p, double tau) const {
    const Panel& pn = panels[p];
    const double u = 0.5 * (pn.u0 + pn.u1) + 0.5 * (pn.u1 - pn.u0) * tau;
    return segments[pn.segment].point(u);
}

cplx ContourSigma::panel_velocity(int p, double tau) const {
    const Panel& pn = panels[p];
    const double u = 0.5 * (pn.u0 + pn.u1) + 0.5 * (pn.u1 - pn.u0) * tau;
    return segments[pn.segment].velocity(u) * (0.5 * (pn.u1 - pn.u0));
}

double ContourSigma::distance(cplx k) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < panels.size(); ++p) {
        for (int i = 0; i <= 16; ++i) {
            const double tau = -1.0 + i / 8.0;
            best = std::min(best, std::abs(panel_point(static_cast<int>(p), tau) - k));
        }
    }
    return best;
}

double ContourSigma::max_panel_length() const {
    double m = 0.0;
    for (const auto& p : panels) m = std::max(m, p.length);
    return m;
}

ContourSigma build_sigma(double R, double K_max, int panels_per_unit, int nodes_per_panel) {
    if (!(R > 0.0)) throw InputError("build_sigma: R must be positive");
    if (!(K_max >= R)) throw InputError("build_sigma: K_max must not be below R");
    if (panels_per_unit < 1) throw InputError("build_sigma: panels_per_unit must be >= 1");
    if (nodes_per_panel < 2) throw InputError("build_sigma: nodes_per_panel must be >= 2");

    ContourSigma c;
    c.R = R;
    c.K_max = K_max;
    c.nodes_per_panel = nodes_per_panel;
    const GaussRule gl = gauss_legendre(nodes_per_panel);
    c.gl_nodes = gl.nodes;
    c.gl_weights = gl.weights;

    if (K_max > R) {
        for (int j = 0; j < 6; ++j) {
            Segment s;
            s.kind = SegmentKind::Ray;
            s.index = j;
            s.R = R;
            s.K = K_max;
            s.direction = (j % 2 == 0) ? 1 : -1;
            c.segments.push_back(s);
        }
    }
    for (int j = 0; j < 6; ++j) {
        Segment s;
        s.kind = SegmentKind::Arc;
        s.index = j;
        s.R = R;
        s.K = K_max;
        s.direction = (j % 2 == 0) ? -1 : 1;
        c.segments.push_back(s);
    }

    for (std::size_t si = 0; si < c.segments.size(); ++si) {
        const Segment& seg = c.segments[si];
        const int np = std::max(1, static_cast<int>(std::ceil(seg.length() * panels_per_unit - 1e-9)));
        for (int p = 0; p < np; ++p) {
            Panel pn;
            pn.segment = static_cast<int>(si);
            pn.u0 = static_cast<double>(p) / np;
            pn.u1 = static_cast<double>(p + 1) / np;
            pn.a = seg.point(pn.u0);
            pn.b = seg.point(pn.u1);
            pn.first_node = static_cast<int>(c.nodes.size());
            pn.length = seg.length() / np;
            const int pid = static_cast<int>(c.panels.size());
            c.panels.push_back(pn);
            for (int i = 0; i < nodes_per_panel; ++i) {
                ContourNode nd;
                nd.s = c.panel_point(pid, gl.nodes[i]);
                nd.w = gl.weights[i] * c.panel_velocity(pid, gl.nodes[i]);
                nd.segment = pn.segment;
                nd.panel = pid;
                c.nodes.push_back(nd);
            }
        }
    }
    return c;
}

namespace {

using Path = std::function<cplx(double)>;  // closed-path piece on [0, 1]

struct Piece {
    Path z;
    double length;
};

/// Winding number of f along the concatenated pieces. Updates min_abs.
int winding(const std::function<cplx(cplx)>& f, const std::vector<Piece>& pieces, const ChooseROptions& opt,
            double& min_abs) {
    double total = 0.0;
    for (const auto& pc : pieces) {
        int n = std::max(8, static_cast<int>(std::ceil(pc.length * opt.samples_per_unit)));
        for (;;) {
            std::vector<cplx> vals(n + 1);
            double local_min = std::numeric_limits<double>::infinity();
            for (int i = 0; i <= n; ++i) {
                vals[i] = f(pc.z(static_cast<double>(i) / n));
                local_min = std::min(local_min, std::abs(vals[i]));
            }
            double sum = 0.0;
            bool smooth = true;
            for (int i = 0; i < n; ++i) {
                const double da = std::arg(vals[i + 1] / vals[i]);
                if (std::abs(da) > kPi / 4.0) smooth = false;
                sum += da;
            }
            if (smooth || n > (1 << 14)) {
                if (!smooth) min_abs = 0.0;
                min_abs = std::min(min_abs, local_min);
                total += sum;
                break;
            }
            n *= 2;
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

/// Counterclockwise boundary of the wedge arg in [alpha, beta], |k| <= R.
std::vector<Piece> wedge(double alpha, double beta, double R) {
    return {
        {[=](double u) { return std::polar(u * R, alpha); }, R},
        {[=](double u) { return std::polar(R, alpha + u * (beta - alpha)); }, R * (beta - alpha)},
        {[=](double u) { return std::polar((1.0 - u) * R, beta); }, R},
    };
}

/// Cheap probe of each function on its arc of the circle |k| = R.
bool circle_representable(const ZeroTargets& f, double R) {
    auto probe = [&](const std::function<cplx(cplx)>& g, double alpha, double beta) {
        if (!g) return true;
        // Mid-arc first: that is where growth peaks, and failures there are cheap.
        for (int j : {8, 4, 12, 2, 6, 10, 14, 1, 3, 5, 7, 9, 11, 13, 15, 0, 16}) {
            const cplx v = g(std::polar(R, alpha + (beta - alpha) * j / 16.0));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        }
        return true;
    };
    try {
        return probe(f.a, kPi, 2.0 * kPi) && probe(f.d, 3 * kThird, 4 * kThird) && probe(f.d, 5 * kThird, 6 * kThird) &&
               probe(f.d1, 4 * kThird, 5 * kThird);
    } catch (const RangeError&) {
        return false;
    } catch (const NumericalError&) {
        return false;
    }
}

}  // namespace

ZeroCount count_zeros(const ZeroTargets& f, double R, const ChooseROptions& opt) {
    ZeroCount zc;
    zc.min_abs = std::numeric_limits<double>::infinity();
    if (f.a) {
        const std::vector<Piece> half{
            {[=](double u) { return std::polar(R, kPi + u * kPi); }, kPi * R},
            {[=](double u) { return cplx(R - 2.0 * R * u, 0.0); }, 2.0 * R},
        };
        zc.a = winding(f.a, half, opt, zc.min_abs);
    }
    if (f.d) {
        zc.d = winding(f.d, wedge(3 * kThird, 4 * kThird, R), opt, zc.min_abs) +
               winding(f.d, wedge(5 * kThird, 6 * kThird, R), opt, zc.min_abs);
    }
    if (f.d1) zc.d1 = winding(f.d1, wedge(4 * kThird, 5 * kThird, R), opt, zc.min_abs);
    return zc;
}

double choose_R(const ZeroTargets& f, double R_min, const ChooseROptions& opt) {
    if (!(R_min > 0.0)) throw InputError("choose_R: R_min must be positive");
    if (!(opt.growth > 1.0) || !(opt.margin > 1.0)) throw InputError("choose_R: growth and margin must exceed 1");

    // Reference count on the largest circle (up to the cap) where all three
    // functions can be evaluated.
    double scan = opt.cap;
    ZeroCount total;
    for (;;) {
        if (scan < R_min * opt.growth) {
            throw ConfigError("choose_R: spectral functions cannot be evaluated on any circle above R_min");
        }
        try {
            if (!circle_representable(f, scan)) {
                scan /= opt.growth;
                continue;
            }
            total = count_zeros(f, scan, opt);
            break;
        } catch (const RangeError&) {
            scan /= opt.growth;
        } catch (const NumericalError&) {
            scan /= opt.growth;
        }
    }

    for (double R = R_min; R * opt.growth <= scan * (1.0 + 1e-12); R *= opt.growth) {
        const ZeroCount lo = count_zeros(f, R / opt.margin, opt);
        const ZeroCount mid = count_zeros(f, R, opt);
        const ZeroCount hi = count_zeros(f, R * opt.growth, opt);
        const double m = std::min({lo.min_abs, mid.min_abs, hi.min_abs});
        if (lo == total && mid == total && hi == total && m >= opt.floor) return R;
    }
    throw ConfigError("choose_R: no stable radius below " + std::to_string(scan) +
                      "; zeros may sit near that radius or the cap is too small");
}

}  // namespace mkdv
