#pragma once

// The contour Sigma = {Im k^3 = 0, R <= |k| <= K_max} u {|k| = R}, split into
// six rays and six arcs, each oriented so that its "+" side is on the left.

#include <functional>
#include <vector>

#include "mkdv/mat2.hpp"

namespace mkdv {

/// Sector index 0..5 (I..VI) of k: floor(arg k / (pi/3)) with arg in [0, 2 pi).
int sector_of(cplx k);

/// Sign (+1 / -1) of the region containing k: outside the disk |k| <= R,
/// sectors I, III, V are "+"; inside the disk the signs flip.
int region_sign(cplx k, double R);

/// Angular distance from k to the nearest ray arg k = j pi / 3.
double distance_to_ray_angle(cplx k);

enum class SegmentKind { Ray, Arc };

struct Segment {
    SegmentKind kind = SegmentKind::Ray;
    /// Rays: index j of arg k = j pi / 3. Arcs: the sector j in I..VI.
    int index = 0;
    double R = 1.0;
    double K = 1.0;
    /// +1 outward / counterclockwise, -1 inward / clockwise.
    int direction = 1;

    /// Point at parameter u in [0, 1] in the direction of travel.
    cplx point(double u) const;
    /// ds/du.
    cplx velocity(double u) const;
    double length() const;
    bool upper() const;
};

struct Panel {
    int segment = 0;
    double u0 = 0.0;
    double u1 = 1.0;
    cplx a;  // start point
    cplx b;  // end point
    /// Index of the first node of this panel in ContourSigma::nodes.
    int first_node = 0;
    double length = 0.0;
};

struct ContourNode {
    cplx s;
    /// Complex quadrature weight for ds.
    cplx w;
    int segment = 0;
    int panel = 0;
};

struct ContourSigma {
    double R = 1.0;
    double K_max = 1.0;
    int nodes_per_panel = 8;
    std::vector<Segment> segments;
    std::vector<Panel> panels;
    std::vector<ContourNode> nodes;
    /// Gauss-Legendre nodes on [-1, 1] shared by every panel.
    std::vector<double> gl_nodes;
    std::vector<double> gl_weights;

    std::size_t size() const { return nodes.size(); }

    /// Point at local Gauss parameter tau in [-1, 1] of panel p.
    cplx panel_point(int p, double tau) const;
    /// ds/dtau on panel p.
    cplx panel_velocity(int p, double tau) const;

    /// Distance from k to the panel point nearest in a coarse sampling; used by guards.
    double distance(cplx k) const;
    double max_panel_length() const;
};

/// Panels per segment: ceil(length * panels_per_unit), at least one.
/// Throws InputError on K_max < R, R <= 0, panels_per_unit < 1 or nodes_per_panel < 2.
/// K_max == R gives the circle only.
ContourSigma build_sigma(double R, double K_max, int panels_per_unit, int nodes_per_panel);

/// Evaluators whose zeros in Im k <= 0 must lie inside |k| < R.
struct ZeroTargets {
    /// a(k); counted over the lower half-disk.
    std::function<cplx(cplx)> a;
    /// d(k); counted over sectors IV and VI inside the disk.
    std::function<cplx(cplx)> d;
    /// d1(k); counted over sector V inside the disk.
    std::function<cplx(cplx)> d1;
};

struct ZeroCount {
    int a = 0;
    int d = 0;
    int d1 = 0;
    /// Smallest |f| met on the boundaries.
    double min_abs = 0.0;
    bool operator==(const ZeroCount& o) const { return a == o.a && d == o.d && d1 == o.d1; }
};

struct ChooseROptions {
    double growth = 1.25;
    double margin = 1.1;
    double cap = 64.0;
    /// Boundary values below this are treated as a zero on the boundary.
    double floor = 1e-8;
    /// Initial samples per unit boundary length; refined until the phase
    /// increment between samples is below pi/4.
    int samples_per_unit = 16;
};

/// Argument-principle zero counts of a, d, d1 inside radius R.
ZeroCount count_zeros(const ZeroTargets& f, double R, const ChooseROptions& opt = {});

/// Zeros are first counted on the largest circle, at most opt.cap, where a, d
/// and d1 evaluate without a range or overflow error (the scan radius). Returns the smallest
/// R = R_min * growth^j whose counts at R / margin, R and growth * R all equal
/// that total, with boundary values above the floor. Zeros beyond the scan
/// radius are invisible. Throws ConfigError when no such R exists.
double choose_R(const ZeroTargets& f, double R_min, const ChooseROptions& opt = {});

}  // namespace mkdv
