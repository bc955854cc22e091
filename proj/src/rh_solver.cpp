#include "mkdv/rh_solver.hpp"

#include <cmath>
#include <numbers>

#include "mkdv/errors.hpp"

namespace mkdv {

namespace {

constexpr double kNearZeta = 2.0;
const cplx kTwoPiI{0.0, 2.0 * std::numbers::pi};

Eigen::MatrixXcd stack(const DensityU& u) {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(u.size()), 4);
    for (std::size_t i = 0; i < u.size(); ++i) {
        m(i, 0) = u[i].m11;
        m(i, 1) = u[i].m12;
        m(i, 2) = u[i].m21;
        m(i, 3) = u[i].m22;
    }
    return m;
}

DensityU unstack(const Eigen::MatrixXcd& m) {
    DensityU u(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) u[i] = {m(i, 0), m(i, 1), m(i, 2), m(i, 3)};
    return u;
}

}  // namespace

CauchyOperator::CauchyOperator(const ContourSigma& sigma) : sigma_(&sigma) {
    const int n = sigma.nodes_per_panel;
    const int P = static_cast<int>(sigma.panels.size());
    vt_lu_.reserve(P);
    zeta_nodes_.resize(P);
    bulge_sign_.resize(P);
    for (int p = 0; p < P; ++p) {
        Eigen::MatrixXcd vt(n, n);
        zeta_nodes_[p].resize(n);
        for (int j = 0; j < n; ++j) {
            const cplx z = to_local(p, sigma.nodes[sigma.panels[p].first_node + j].s);
            zeta_nodes_[p][j] = z;
            cplx pw = 1.0;
            for (int m = 0; m < n; ++m) {
                vt(m, j) = pw;
                pw *= z;
            }
        }
        vt_lu_.emplace_back(vt);
        const Segment& seg = sigma.segments[sigma.panels[p].segment];
        if (seg.kind == SegmentKind::Arc) {
            const double im = to_local(p, sigma.panel_point(p, 0.0)).imag();
            bulge_sign_[p] = (im > 0.0) ? 1.0 : -1.0;
        } else {
            bulge_sign_[p] = 0.0;
        }
    }

    const int N = static_cast<int>(sigma.size());
    pv_ = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        const cplx z = sigma.nodes[i].s;
        const int own = sigma.nodes[i].panel;
        for (int p = 0; p < P; ++p) {
            const int f = sigma.panels[p].first_node;
            const bool self = (p == own);
            if (self || std::abs(to_local(p, z)) <= kNearZeta) {
                const Eigen::VectorXcd l = panel_weights(p, z, self);
                for (int j = 0; j < n; ++j) pv_(i, f + j) = l(j) / kTwoPiI;
            } else {
                for (int j = 0; j < n; ++j) {
                    const ContourNode& nd = sigma.nodes[f + j];
                    pv_(i, f + j) = nd.w / (kTwoPiI * (nd.s - z));
                }
            }
        }
    }
}

cplx CauchyOperator::to_local(int p, cplx z) const {
    const Panel& pn = sigma_->panels[p];
    return (2.0 * z - (pn.a + pn.b)) / (pn.b - pn.a);
}

bool CauchyOperator::in_bulge(int p, cplx z) const {
    if (bulge_sign_[p] == 0.0) return false;
    const double R = sigma_->segments[sigma_->panels[p].segment].R;
    if (!(std::abs(z) < R)) return false;
    const double im = to_local(p, z).imag();
    return (im > 0.0) == (bulge_sign_[p] > 0.0);
}

Eigen::VectorXcd CauchyOperator::panel_weights(int p, cplx z, bool on_panel) const {
    const int n = sigma_->nodes_per_panel;
    const cplx zeta = to_local(p, z);
    const cplx F = std::log(1.0 - zeta) - std::log(-1.0 - zeta);
    // Winding of (arc, reversed chord) around points in the bulge.
    const double w = -bulge_sign_[p];
    const double pi = std::numbers::pi;
    cplx p0;
    if (on_panel) {
        p0 = (bulge_sign_[p] == 0.0) ? cplx(F.real(), 0.0) : F + cplx(0.0, pi * w);
    } else {
        p0 = in_bulge(p, z) ? F + cplx(0.0, 2.0 * pi * w) : F;
    }
    Eigen::VectorXcd pm(n);
    pm(0) = p0;
    for (int m = 0; m + 1 < n; ++m) {
        const double mono = ((m + 1) % 2 == 1) ? 2.0 / (m + 1) : 0.0;
        pm(m + 1) = zeta * pm(m) + mono;
    }
    return vt_lu_[p].solve(pm);
}

Mat2C CauchyOperator::transform(const DensityU& u, cplx z) const {
    const int n = sigma_->nodes_per_panel;
    Mat2C acc = Mat2C::zero();
    for (std::size_t p = 0; p < sigma_->panels.size(); ++p) {
        const int pi = static_cast<int>(p);
        const int f = sigma_->panels[p].first_node;
        if (std::abs(to_local(pi, z)) <= kNearZeta) {
            const Eigen::VectorXcd l = panel_weights(pi, z, false);
            for (int j = 0; j < n; ++j) acc += u[f + j] * l(j);
        } else {
            for (int j = 0; j < n; ++j) {
                const ContourNode& nd = sigma_->nodes[f + j];
                acc += u[f + j] * (nd.w / (nd.s - z));
            }
        }
    }
    return acc * (1.0 / kTwoPiI);
}

Mat2C CauchyOperator::cauchy_off(const DensityU& u, cplx k) const {
    if (sigma_->distance(k) <= sigma_->max_panel_length()) {
        throw DomainError("cauchy_off: point within one panel length of the contour");
    }
    return Mat2C::identity() + transform(u, k);
}

DensityU CauchyOperator::cauchy_minus(const DensityU& u) const {
    const Eigen::MatrixXcd U = stack(u);
    return unstack(pv_ * U - 0.5 * U);
}

DensityU CauchyOperator::cauchy_plus(const DensityU& u) const {
    const Eigen::MatrixXcd U = stack(u);
    return unstack(pv_ * U + 0.5 * U);
}

CauchyOperator::BoundaryValues CauchyOperator::boundary_values(const DensityU& u, int p, double tau) const {
    const int n = sigma_->nodes_per_panel;
    const cplx z = sigma_->panel_point(p, tau);
    Mat2C pv = Mat2C::zero();
    for (std::size_t q = 0; q < sigma_->panels.size(); ++q) {
        const int qi = static_cast<int>(q);
        const int f = sigma_->panels[q].first_node;
        const bool self = (qi == p);
        if (self || std::abs(to_local(qi, z)) <= kNearZeta) {
            const Eigen::VectorXcd l = panel_weights(qi, z, self);
            for (int j = 0; j < n; ++j) pv += u[f + j] * l(j);
        } else {
            for (int j = 0; j < n; ++j) {
                const ContourNode& nd = sigma_->nodes[f + j];
                pv += u[f + j] * (nd.w / (nd.s - z));
            }
        }
    }
    pv *= 1.0 / kTwoPiI;

    // Interpolant weights: V^{-T} (1, zeta, zeta^2, ...).
    const cplx zeta = to_local(p, z);
    Eigen::VectorXcd mono(n);
    cplx pw = 1.0;
    for (int m = 0; m < n; ++m) {
        mono(m) = pw;
        pw *= zeta;
    }
    const Eigen::VectorXcd l = vt_lu_[p].solve(mono);
    Mat2C uz = Mat2C::zero();
    const int f = sigma_->panels[p].first_node;
    for (int j = 0; j < n; ++j) uz += u[f + j] * l(j);
    return {z, pv + 0.5 * uz, pv - 0.5 * uz, uz};
}

DensityU solve_rhp(const CauchyOperator& op, const std::vector<Mat2C>& J, RHSolveReport* report,
                   const RHOptions& opt) {
    const ContourSigma& sigma = op.sigma();
    const Eigen::Index N = static_cast<Eigen::Index>(sigma.size());
    if (J.size() != sigma.size()) throw InputError("solve_rhp: jump field size differs from node count");

    bool trivial = true;
    for (const auto& j : J) {
        if (!(j == Mat2C::identity())) {
            trivial = false;
            break;
        }
    }
    if (trivial) {
        if (report != nullptr) {
            *report = RHSolveReport{};
            report->unknowns = static_cast<int>(4 * N);
            report->rcond = 1.0;
        }
        return DensityU(sigma.size(), Mat2C::zero());
    }

    auto entry = [](const Mat2C& m, int r, int c) {
        return r == 0 ? (c == 0 ? m.m11 : m.m12) : (c == 0 ? m.m21 : m.m22);
    };

    // Row r of u: X = [u_r1; u_r2]. Column c of the equation at node i reads
    //   sum_c' u_rc'(i) J[c'][c] + sum_c' (C_- u_rc')(i) (J - I)[c'][c] = (I - J)[r][c].
    // C_- = pv - I/2; the shift goes on the diagonal so pv is never copied.
    const Eigen::MatrixXcd& pv = op.pv_matrix();
    auto coefficients = [&](int c, int cp, Eigen::VectorXcd& e, Eigen::VectorXcd& jd) {
        for (Eigen::Index i = 0; i < N; ++i) {
            const cplx jv = entry(J[i], cp, c);
            jd(i) = jv;
            e(i) = jv - (cp == c ? 1.0 : 0.0);
        }
    };
    Eigen::MatrixXcd A(2 * N, 2 * N);
    Eigen::MatrixXcd B(2 * N, 2);
    Eigen::VectorXcd e(N);
    Eigen::VectorXcd jd(N);
    for (int c = 0; c < 2; ++c) {
        for (int cp = 0; cp < 2; ++cp) {
            coefficients(c, cp, e, jd);
            A.block(c * N, cp * N, N, N).noalias() = e.asDiagonal() * pv;
            A.block(c * N, cp * N, N, N).diagonal() += jd - 0.5 * e;
        }
        for (Eigen::Index i = 0; i < N; ++i) {
            for (int r = 0; r < 2; ++r) B(c * N + i, r) = (r == c ? 1.0 : 0.0) - entry(J[i], r, c);
        }
    }

    // Factor in place: at a few thousand nodes a second copy of A does not fit.
    Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXcd>> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond * opt.max_condition >= 1.0)) {
        throw NumericalError("solve_rhp: condition estimate " + std::to_string(1.0 / rcond) +
                             " exceeds threshold; change R or the contour resolution");
    }
    const Eigen::MatrixXcd X = lu.solve(B);

    DensityU u(sigma.size());
    for (Eigen::Index i = 0; i < N; ++i) u[i] = {X(i, 0), X(N + i, 0), X(i, 1), X(N + i, 1)};

    if (report != nullptr) {
        report->unknowns = static_cast<int>(4 * N);
        report->rcond = rcond;
        // A was overwritten by its factors; rebuild A X block by block.
        Eigen::MatrixXcd AX = -B;
        for (int c = 0; c < 2; ++c) {
            for (int cp = 0; cp < 2; ++cp) {
                coefficients(c, cp, e, jd);
                const auto Xc = X.middleRows(cp * N, N);
                AX.middleRows(c * N, N).noalias() += e.asDiagonal() * (pv * Xc);
                AX.middleRows(c * N, N) += (jd - 0.5 * e).asDiagonal() * Xc;
            }
        }
        const double bnorm = std::max(1.0, B.cwiseAbs().maxCoeff());
        report->collocation_residual = AX.cwiseAbs().maxCoeff() / bnorm;
        report->jump_residual = -1.0;
    }
    return u;
}

Reconstruction reconstruct_q(const ContourSigma& sigma, const DensityU& u) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) acc += sigma.nodes[i].w * u[i].m12;
    acc /= std::numbers::pi;
    return {acc.real(), acc.imag()};
}

double jump_residual(const CauchyOperator& op, const DensityU& u,
                     const std::function<Mat2C(int segment, cplx s)>& jump_at, int probes) {
    const ContourSigma& sigma = op.sigma();
    const int P = static_cast<int>(sigma.panels.size());
    if (probes <= 0 || P == 0) return -1.0;
    const int n = sigma.nodes_per_panel;
    const double tau = (n % 2 == 0) ? 0.0 : 0.5 * (sigma.gl_nodes[n / 2] + sigma.gl_nodes[n / 2 + 1]);
    const int stride = std::max(1, P / probes);
    double worst = 0.0;
    for (int p = 0; p < P; p += stride) {
        const auto bv = op.boundary_values(u, p, tau);
        const Mat2C mp = Mat2C::identity() + bv.plus;
        const Mat2C mm = Mat2C::identity() + bv.minus;
        const Mat2C J = jump_at(sigma.panels[p].segment, bv.s);
        worst = std::max(worst, max_abs_diff(mm, mp * J));
    }
    return worst;
}

std::vector<FieldPoint> solve_field(const CauchyOperator& op, const SpectralData& spec,
                                    const std::vector<std::pair<double, double>>& points, const RHOptions& opt) {
    const ContourSigma& sigma = op.sigma();
    const std::vector<Mat2C> J0 = assemble_J0_field(spec, sigma);
    std::vector<FieldPoint> out;
    out.reserve(points.size());
    for (std::size_t idx = 0; idx < points.size(); ++idx) {
        const auto [x, t] = points[idx];
        FieldPoint fp;
        fp.x = x;
        fp.t = t;
        try {
            std::vector<Mat2C> J(sigma.size());
            for (std::size_t i = 0; i < sigma.size(); ++i) J[i] = conjugate_jump(J0[i], sigma.nodes[i].s, x, t);
            const DensityU u = solve_rhp(op, J, &fp.report, opt);
            fp.rec = reconstruct_q(sigma, u);
            fp.q = fp.rec.q;
            fp.report.imag_diagnostic = std::abs(fp.rec.imag);
            if (opt.jump_probes > 0) {
                fp.report.jump_residual = jump_residual(
                    op, u,
                    [&](int seg, cplx s) {
                        return conjugate_jump(assemble_J0(spec, sigma.segments[seg], s), s, x, t);
                    },
                    opt.jump_probes);
            }
        } catch (const Error& e) {
            throw NumericalError("solve_field: point " + std::to_string(idx) + " (x = " + std::to_string(x) +
                                 ", t = " + std::to_string(t) + "): " + e.what());
        }
        out.push_back(fp);
    }
    return out;
}

}  // namespace mkdv
