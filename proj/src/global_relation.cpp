#include "mkdv/global_relation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mkdv/contour.hpp"
#include "mkdv/errors.hpp"
#include "mkdv/quadrature.hpp"

namespace mkdv {

Mat2C row_integral(const UniformSamples& q_T, cplx k, int lambda, const IntegratorOptions& opt, int gauss_points) {
    // mu4(y, T) = Phi(y) e^{-iky sigma3} with Phi(L) = e^{ikL sigma3}, so the
    // integrand e^{-iky sigma3-hat}(Q mu4) equals e^{-iky sigma3} Q(y) Phi(y).
    const GaussRule gl = gauss_legendre(gauss_points);
    const int n = q_T.intervals();
    const double h = q_T.h();
    Mat2C phi = exp_sigma3(kI * k * q_T.b);
    double y_prev = q_T.b;
    Mat2C acc = Mat2C::zero();
    for (int cell = n - 1; cell >= 0; --cell) {
        const double y0 = q_T.node(cell);
        for (int g = gauss_points - 1; g >= 0; --g) {
            const double y = y0 + 0.5 * h * (1.0 + gl.nodes[g]);
            phi = integrate_x_system(q_T, k, lambda, y_prev, y, phi, opt);
            y_prev = y;
            const Mat2C f = exp_sigma3(-kI * k * y) * build_Q(q_T(y), lambda) * phi;
            acc += f * cplx(0.5 * h * gl.weights[g]);
        }
    }
    return acc;
}

cplx compute_c(const UniformSamples& q_T, cplx k, int lambda, const IntegratorOptions& opt, int gauss_points) {
    return row_integral(q_T, k, lambda, opt, gauss_points).m12;
}

cplx gr_lhs(const SpectralPoint& p) {
    const double lam = p.lambda;
    const cplx e = -2.0 * kI * p.k * p.L;
    check_exponent(e.real(), "e^{-2ikL}");
    return std::exp(e) * (p.abar() * p.A() - lam * p.bbar() * p.B()) * p.B1() - (p.a() * p.B() - p.b() * p.A()) * p.A1();
}

cplx gr_residual_finite_T(const SpectralPoint& p, cplx c, double T) {
    const cplx e = 8.0 * kI * p.k * p.k * p.k * T;
    check_exponent(e.real(), "e^{8ik^3T}");
    return gr_lhs(p) + std::exp(e) * c;
}

cplx gr_residual_T_inf(const SpectralPoint& p) {
    const int sec = sector_of(p.k);
    if (sec % 2 != 0 || distance_to_ray_angle(p.k) < 1e-12 || std::abs(p.k) == 0.0) {
        static const char* names[] = {"I", "II", "III", "IV", "V", "VI"};
        throw DomainError(std::string("T = infinity global relation needs k inside I, III or V; k is in sector ") +
                          names[sec] + (distance_to_ray_angle(p.k) < 1e-12 ? " (on a boundary ray)" : ""));
    }
    return gr_lhs(p);
}

Mat2C gr_matrix_residual(const SpectralPoint& p, const Mat2C& row_int, double T) {
    const cplx k = p.k;
    const Mat2C lhs = p.S.inverse() * p.s * sigma3_hat_conj(p.S1, -kI * k * p.L);
    const Mat2C rhs = Mat2C::identity() - sigma3_hat_conj(row_int, 4.0 * kI * k * k * k * T);
    return lhs - rhs;
}

std::vector<cplx> default_gr_kset(double R, double K_max) {
    std::vector<cplx> ks;
    for (int i = 0; i < 32; ++i) ks.emplace_back(-K_max + 2.0 * K_max * i / 31.0, 0.0);
    for (int ray = 1; ray <= 2; ++ray) {
        const cplx e = std::polar(1.0, ray * std::numbers::pi / 3.0);
        for (int i = 0; i < 16; ++i) ks.push_back(e * (R + (K_max - R) * i / 15.0));
    }
    return ks;
}

GRReport gr_report(const SpectralData& spec, const UniformSamples& q_T, const std::vector<cplx>& ks) {
    GRReport rep;
    double sumsq = 0.0;
    int evaluated = 0;
    const auto& p = spec.params();
    for (cplx k : ks) {
        GRSample smp;
        smp.k = k;
        try {
            const SpectralPoint& pt = spec.at(k);
            smp.c = compute_c(q_T, k, p.lambda, spec.options());
            smp.residual = gr_residual_finite_T(pt, smp.c, p.T);
        } catch (const RangeError&) {
            smp.clamped = true;
            ++rep.clamped;
        }
        if (!smp.clamped) {
            const double r = std::abs(smp.residual);
            rep.max_abs = std::max(rep.max_abs, r);
            sumsq += r * r;
            ++evaluated;
            if (std::abs(k) >= 1.0) {
                const double growth = std::exp(2.0 * k.imag() * p.L);
                rep.c_decay_constant = std::max(rep.c_decay_constant, std::abs(smp.c) * std::abs(k) / (1.0 + growth));
            }
        }
        rep.samples.push_back(smp);
    }
    rep.rms = evaluated > 0 ? std::sqrt(sumsq / evaluated) : 0.0;
    return rep;
}

}  // namespace mkdv
