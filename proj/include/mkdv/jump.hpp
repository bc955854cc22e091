#pragma once

// Jump matrices on Sigma: J0(k) from the spectral functions and the
// (x, t)-dependent conjugation e^{(ikx - 4ik^3 t) sigma3-hat}.

#include <optional>
#include <vector>

#include "mkdv/contour.hpp"
#include "mkdv/spectral.hpp"

namespace mkdv {

enum class JumpCase {
    RealRay,   // arg k = 0, pi
    UpperRay,  // arg k = pi/3, 2pi/3
    SideArc,   // |k| = R, arg k in (0, pi/3) u (2pi/3, pi)
    TopArc,    // |k| = R, arg k in (pi/3, 2pi/3)
};

/// Case of an upper-half segment. Lower-half segments report the case of their mirror image.
JumpCase classify(const Segment& seg);

/// Upper-half formula for J0 at k on a segment of the given case.
Mat2C assemble_J0_upper(const SpectralPoint& p, JumpCase c, std::optional<double> floor = std::nullopt);

/// J0 at the point k of segment `seg`. Lower-half points use
/// diag(-1, lambda) J0(conj k)^* diag(-1, lambda), * the conjugate transpose.
Mat2C assemble_J0(const SpectralData& spec, const Segment& seg, cplx k, std::optional<double> floor = std::nullopt);

/// J0 at every node of the contour.
std::vector<Mat2C> assemble_J0_field(const SpectralData& spec, const ContourSigma& sigma,
                                     std::optional<double> floor = std::nullopt);

/// e^{theta sigma3} J0 e^{-theta sigma3} with theta = i(kx - 4k^3 t).
Mat2C conjugate_jump(const Mat2C& J0, cplx k, double x, double t);

/// Max of |J(x,t,k) - I| over probe points on the six rays with
/// |k| in (K_max, 2 K_max].
double truncation_error(const SpectralData& spec, double R, double K_max, double x, double t, int probes_per_ray = 8);

}  // namespace mkdv
