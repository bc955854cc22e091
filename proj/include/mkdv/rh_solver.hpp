#pragma once

// Collocation solver for M_- = M_+ J on Sigma with M = I + C[u],
// C[u](k) = (1/2 pi i) int u(s) / (s - k) ds.

#include <Eigen/Dense>
#include <vector>

#include "mkdv/contour.hpp"
#include "mkdv/jump.hpp"

namespace mkdv {

using DensityU = std::vector<Mat2C>;

/// Cauchy operator on a fixed contour. Panels that are close to the target
/// (|zeta| <= 2 in local coordinates) use exact integration of the panel's
/// polynomial interpolant; the rest use the plain node rule.
class CauchyOperator {
public:
    explicit CauchyOperator(const ContourSigma& sigma);

    const ContourSigma& sigma() const { return *sigma_; }

    /// N x N matrix of the principal-value part (1/2 pi i) PV int at the nodes.
    const Eigen::MatrixXcd& pv_matrix() const { return pv_; }

    /// Weights l_j with int_panel f(s)/(s - z) ds = sum_j l_j f(s_j) for the
    /// panel's interpolant. `on_panel` selects the principal value for z on the panel.
    Eigen::VectorXcd panel_weights(int p, cplx z, bool on_panel) const;

    /// C[u](z) with no proximity guard; accurate up to the contour.
    Mat2C transform(const DensityU& u, cplx z) const;

    /// I + C[u](k). Throws DomainError when k is within one panel length of Sigma.
    Mat2C cauchy_off(const DensityU& u, cplx k) const;

    /// C_-[u] at every node.
    DensityU cauchy_minus(const DensityU& u) const;
    /// C_+[u] at every node.
    DensityU cauchy_plus(const DensityU& u) const;

    struct BoundaryValues {
        cplx s;
        Mat2C plus;
        Mat2C minus;
        Mat2C u;
    };
    /// C_+[u], C_-[u] and the interpolated density at local parameter tau of panel p.
    BoundaryValues boundary_values(const DensityU& u, int p, double tau) const;

private:
    cplx to_local(int p, cplx z) const;
    bool in_bulge(int p, cplx z) const;

    const ContourSigma* sigma_;
    std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> vt_lu_;
    std::vector<std::vector<cplx>> zeta_nodes_;
    std::vector<double> bulge_sign_;
    Eigen::MatrixXcd pv_;
};

struct RHSolveReport {
    int unknowns = 0;
    double rcond = 0.0;
    double collocation_residual = 0.0;
    /// max over probe points of |M_- - M_+ J| between nodes; negative if not computed.
    double jump_residual = -1.0;
    double imag_diagnostic = 0.0;
};

struct RHOptions {
    double max_condition = 1e12;
    /// Number of panels (evenly spread) probed for the off-node jump residual; 0 disables.
    int jump_probes = 0;
};

/// Solves u J + (C_- u)(J - I) = I - J at the nodes. Throws NumericalError
/// when the estimated condition number exceeds opt.max_condition.
DensityU solve_rhp(const CauchyOperator& op, const std::vector<Mat2C>& J, RHSolveReport* report = nullptr,
                   const RHOptions& opt = {});

struct Reconstruction {
    double q = 0.0;
    double imag = 0.0;
};

/// q = (1/pi) Re int u_12 ds; imag carries the imaginary part.
Reconstruction reconstruct_q(const ContourSigma& sigma, const DensityU& u);

/// Jump residual at probe points between nodes, for a solved density and
/// a callable giving J at arbitrary points of the contour.
double jump_residual(const CauchyOperator& op, const DensityU& u,
                     const std::function<Mat2C(int segment, cplx s)>& jump_at, int probes);

struct FieldPoint {
    double x = 0.0;
    double t = 0.0;
    double q = 0.0;
    RHSolveReport report;
    Reconstruction rec;
};

/// Solves the RH problem at each (x, t) on a fixed contour with J0 precomputed.
std::vector<FieldPoint> solve_field(const CauchyOperator& op, const SpectralData& spec,
                                    const std::vector<std::pair<double, double>>& points, const RHOptions& opt = {});

}  // namespace mkdv
