#include "mkdv/jump.hpp"

#include <algorithm>
#include <numbers>

#include "mkdv/errors.hpp"

namespace mkdv {

JumpCase classify(const Segment& seg) {
    if (seg.kind == SegmentKind::Ray) {
        const int j = seg.index % 3;  // mirror: 4 -> 2 pi/3 row, 5 -> pi/3 row
        return (j == 0) ? JumpCase::RealRay : JumpCase::UpperRay;
    }
    const int j = seg.upper() ? seg.index : 5 - seg.index;
    return (j == 1) ? JumpCase::TopArc : JumpCase::SideArc;
}

Mat2C assemble_J0_upper(const SpectralPoint& p, JumpCase c, std::optional<double> floor) {
    const double lam = p.lambda;
    switch (c) {
        case JumpCase::RealRay: {
            const GammaValues g = gamma_fns(p, floor);
            const GammaValues gr = gamma_fns_reflected(p, floor);
            const Mat2C left{1.0, -lam * gr.Gamma, 0.0, 1.0};
            const Mat2C mid{1.0 - lam * std::norm(g.gamma), g.gamma, -lam * std::conj(g.gamma), 1.0};
            const Mat2C right{1.0, 0.0, g.Gamma, 1.0};
            return left * mid * right;
        }
        case JumpCase::UpperRay: {
            const GammaValues gr = gamma_fns_reflected(p, floor);
            const Mat2C left{1.0, -lam * gr.Gamma, 0.0, 1.0};
            const Mat2C right{1.0, 0.0, lam * gr.Gamma1, 1.0};
            return left * right;
        }
        case JumpCase::SideArc: {
            const cplx db = p.dbar();
            const double fl = floor.value_or(default_gamma_floor(p.k));
            if (!(std::abs(db) >= fl)) throw SingularJumpError("conj(d(conj k)) below floor on the circle");
            return {p.A() / db, -p.B() / db, -lam * p.bbar(), p.abar()};
        }
        case JumpCase::TopArc: {
            const GammaValues gr = gamma_fns_reflected(p, floor);
            return {p.abar(), 0.0, lam * gr.Gamma2, 1.0 / p.abar()};
        }
    }
    throw DomainError("assemble_J0_upper: unknown case");
}

Mat2C assemble_J0(const SpectralData& spec, const Segment& seg, cplx k, std::optional<double> floor) {
    const JumpCase c = classify(seg);
    if (seg.upper()) return assemble_J0_upper(spec.at(k), c, floor);
    const Mat2C up = assemble_J0_upper(spec.at(std::conj(k)), c, floor);
    const Mat2C D = Mat2C::diag(-1.0, static_cast<double>(spec.params().lambda));
    return D * up.adjoint() * D;
}

std::vector<Mat2C> assemble_J0_field(const SpectralData& spec, const ContourSigma& sigma,
                                     std::optional<double> floor) {
    std::vector<Mat2C> out(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const ContourNode& n = sigma.nodes[i];
        out[i] = assemble_J0(spec, sigma.segments[n.segment], n.s, floor);
    }
    return out;
}

Mat2C conjugate_jump(const Mat2C& J0, cplx k, double x, double t) {
    return sigma3_hat_conj(J0, PhaseArgs{k, x, t}.theta());
}

double truncation_error(const SpectralData& spec, double R, double K_max, double x, double t, int probes_per_ray) {
    double worst = 0.0;
    for (int j = 0; j < 6; ++j) {
        Segment seg;
        seg.kind = SegmentKind::Ray;
        seg.index = j;
        seg.R = R;
        seg.K = K_max;
        for (int i = 1; i <= probes_per_ray; ++i) {
            const double r = K_max * (1.0 + static_cast<double>(i) / probes_per_ray);
            const cplx k = std::polar(r, j * std::numbers::pi / 3.0);
            const Mat2C J = conjugate_jump(assemble_J0(spec, seg, k), k, x, t);
            worst = std::max(worst, max_abs_diff(J, Mat2C::identity()));
        }
    }
    return worst;
}

}  // namespace mkdv
