#include "mkdv/oracle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "mkdv/errors.hpp"
#include "mkdv/quadrature.hpp"

namespace mkdv {

FieldGrid::FieldGrid(double L_, double T_, int nx_, int nt_)
    : L(L_), T(T_), nx(nx_), nt(nt_), q(static_cast<std::size_t>(nx_ + 1) * (nt_ + 1), 0.0) {}

UniformSamples FieldGrid::row(int j) const {
    const auto first = q.begin() + static_cast<std::ptrdiff_t>(j) * (nx + 1);
    return {0.0, L, std::vector<double>(first, first + nx + 1)};
}

UniformSamples FieldGrid::column(int i) const {
    std::vector<double> v(nt + 1);
    for (int j = 0; j <= nt; ++j) v[j] = at(i, j);
    return {0.0, T, std::move(v)};
}

double FieldGrid::at_point(double x, double t) const {
    const int i = static_cast<int>(std::lround(x / dx()));
    const int j = static_cast<int>(std::lround(t / dt()));
    if (i < 0 || i > nx || j < 0 || j > nt || std::abs(this->x(i) - x) > 1e-9 || std::abs(this->t(j) - t) > 1e-9) {
        throw DomainError("FieldGrid::at_point: point is not a grid node");
    }
    return at(i, j);
}

namespace {

/// Stencil of `width` points for the m-th derivative at node i of an n-interval grid, clamped inside.
struct Stencil {
    int first = 0;
    std::vector<double> w;
};

Stencil stencil(int i, int n, int m, int width, double h) {
    Stencil s;
    s.first = std::clamp(i - width / 2, 0, n + 1 - width);
    std::vector<double> xs(width);
    for (int j = 0; j < width; ++j) xs[j] = s.first + j;
    s.w = fd_weights(static_cast<double>(i), xs, m);
    const double scale = std::pow(h, m);
    for (double& x : s.w) x /= scale;
    return s;
}

double apply(const Stencil& s, const double* v) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s.w.size(); ++j) acc += s.w[j] * v[s.first + j];
    return acc;
}

double sech(double z) { return 1.0 / std::cosh(z); }

}  // namespace

double pde_residual(const FieldGrid& f, int lambda) {
    if (f.nx < 6 || f.nt < 2) throw InputError("pde_residual: grid too small for the stencils");
    const double h = f.dx();
    const double dt = f.dt();
    const Stencil d1 = stencil(3, 6, 1, 5, h);
    const Stencil d3 = stencil(3, 6, 3, 7, h);
    double worst = 0.0;
    for (int j = 1; j < f.nt; ++j) {
        const double* row = &f.q[static_cast<std::size_t>(j) * (f.nx + 1)];
        for (int i = 3; i <= f.nx - 3; ++i) {
            const double qt = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * dt);
            double qx = 0.0;
            for (int k = 0; k < 5; ++k) qx += d1.w[k] * row[i - 2 + k];
            double qxxx = 0.0;
            for (int k = 0; k < 7; ++k) qxxx += d3.w[k] * row[i - 3 + k];
            const double q = row[i];
            worst = std::max(worst, std::abs(qt - qxxx + 6.0 * lambda * q * q * qx));
        }
    }
    return worst;
}

std::array<double, 3> traveling_wave_jet(double kappa, double x0, double speed, double x, double t) {
    const double z = kappa * (x - speed * t - x0);
    const double s = sech(z);
    const double th = std::tanh(z);
    return {kappa * s, -kappa * kappa * s * th, kappa * kappa * kappa * s * (2.0 * th * th - 1.0)};
}

namespace {

FieldGrid wave_field(double kappa, double x0, double speed, double L, double T, int nx, int nt) {
    FieldGrid f(L, T, nx, nt);
    for (int j = 0; j <= nt; ++j) {
        for (int i = 0; i <= nx; ++i) f.at(i, j) = traveling_wave_jet(kappa, x0, speed, f.x(i), f.t(j))[0];
    }
    return f;
}

}  // namespace

WaveData exact_traveling_wave(double kappa, double x0, int lambda, const GridSpec& grid,
                              const WaveCertification& cert) {
    if (kappa < 0.0) throw InputError("exact_traveling_wave: kappa must be >= 0");
    if (kappa > 0.0 && lambda != -1) throw InputError("exact_traveling_wave: the sech wave needs lambda = -1");
    WaveData w;
    w.kappa = kappa;
    w.x0 = x0;

    if (kappa > 0.0) {
        // Candidate speeds; the branch is decided by the residual, not assumed.
        const double candidates[] = {-kappa * kappa, kappa * kappa};
        double best = std::numeric_limits<double>::infinity();
        for (double c : candidates) {
            const double r = pde_residual(wave_field(kappa, x0, c, grid.L, grid.T, cert.nx, cert.nt), lambda);
            if (r < best) {
                best = r;
                w.speed = c;
            }
        }
        w.certification_residual = best;
        if (!(best < cert.tol)) {
            throw NumericalError("exact_traveling_wave: certification residual " + std::to_string(best) +
                                 " exceeds " + std::to_string(cert.tol));
        }
    }

    w.field = wave_field(kappa, x0, w.speed, grid.L, grid.T, grid.nx, grid.nt);
    w.q0.q = w.field.row(0);
    w.q_T = w.field.row(grid.nt);
    auto trace = [&](double x, int comp) {
        return UniformSamples::from_function(0.0, grid.T, grid.nt, [&](double t) {
            return traveling_wave_jet(kappa, x0, w.speed, x, t)[comp];
        });
    };
    w.traces.g = {trace(0.0, 0), trace(0.0, 1), trace(0.0, 2)};
    w.traces.f = {trace(grid.L, 0), trace(grid.L, 1), trace(grid.L, 2)};
    return w;
}

FieldGrid fd_solve_ibvp(const InitialProfile& q0, const UniformSamples& g0, const UniformSamples& g1,
                        const UniformSamples& f0, int lambda, int nt, const FDOptions& opt) {
    const int n = q0.q.intervals();
    if (n < 8) throw InputError("fd_solve_ibvp: need at least 8 intervals in x");
    if (nt < 1) throw InputError("fd_solve_ibvp: need at least one time step");
    const double L = q0.L();
    const double T = g0.b;
    FieldGrid f(L, T, n, nt);
    const double h = L / n;
    const double dt = T / nt;

    std::vector<Stencil> d1(n + 1);
    std::vector<Stencil> d3(n + 1);
    for (int i = 0; i <= n; ++i) {
        d1[i] = stencil(i, n, 1, 5, h);
        d3[i] = stencil(i, n, 3, 7, h);
    }
    const Stencil bc1 = stencil(0, n, 1, 5, h);

    auto rhs = [&](const std::vector<double>& q, int i) {
        const double qx = apply(d1[i], q.data());
        return apply(d3[i], q.data()) - 6.0 * lambda * q[i] * q[i] * qx;
    };

    std::vector<double> cur = q0.q.v;
    for (int i = 0; i <= n; ++i) f.at(i, 0) = cur[i];

    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    bool analyzed = false;
    std::vector<double> next(n + 1);
    Eigen::VectorXd G(n + 1);
    for (int step = 1; step <= nt; ++step) {
        const double tn = dt * step;
        std::vector<double> fold(n + 1, 0.0);
        for (int i = 2; i <= n - 1; ++i) fold[i] = rhs(cur, i);
        next = cur;
        bool converged = false;
        for (int it = 0; it < opt.newton_max; ++it) {
            std::vector<Eigen::Triplet<double>> trip;
            trip.reserve(static_cast<std::size_t>(n + 1) * 12);
            G(0) = next[0] - g0(tn);
            trip.emplace_back(0, 0, 1.0);
            G(1) = apply(bc1, next.data()) - g1(tn);
            for (std::size_t j = 0; j < bc1.w.size(); ++j) trip.emplace_back(1, bc1.first + j, bc1.w[j]);
            G(n) = next[n] - f0(tn);
            trip.emplace_back(n, n, 1.0);
            for (int i = 2; i <= n - 1; ++i) {
                const double qx = apply(d1[i], next.data());
                G(i) = (next[i] - cur[i]) / dt - 0.5 * (rhs(next, i) + fold[i]);
                trip.emplace_back(i, i, 1.0 / dt + 0.5 * 6.0 * lambda * 2.0 * next[i] * qx);
                for (std::size_t j = 0; j < d3[i].w.size(); ++j) {
                    trip.emplace_back(i, d3[i].first + j, -0.5 * d3[i].w[j]);
                }
                const double c = 0.5 * 6.0 * lambda * next[i] * next[i];
                for (std::size_t j = 0; j < d1[i].w.size(); ++j) trip.emplace_back(i, d1[i].first + j, c * d1[i].w[j]);
            }
            Eigen::SparseMatrix<double> J(n + 1, n + 1);
            J.setFromTriplets(trip.begin(), trip.end());
            if (!analyzed) {
                solver.analyzePattern(J);
                analyzed = true;
            }
            solver.factorize(J);
            if (solver.info() != Eigen::Success) throw NumericalError("fd_solve_ibvp: singular Newton matrix");
            const Eigen::VectorXd delta = solver.solve(G);
            double dmax = 0.0;
            for (int i = 0; i <= n; ++i) {
                next[i] -= delta(i);
                dmax = std::max(dmax, std::abs(delta(i)));
            }
            if (dmax <= opt.newton_tol * (1.0 + q0.q.max_abs())) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NumericalError("fd_solve_ibvp: Newton failed at step " + std::to_string(step));
        for (int i = 0; i <= n; ++i) {
            if (!std::isfinite(next[i]) || std::abs(next[i]) > 1e6) {
                throw NumericalError("fd_solve_ibvp: unstable at step " + std::to_string(step) +
                                     "; refine the grid or regenerate the data from the exact wave");
            }
        }
        cur = next;
        for (int i = 0; i <= n; ++i) f.at(i, step) = cur[i];
    }
    return f;
}

ExtractedData extract_traces(const FieldGrid& f) {
    ExtractedData out;
    std::array<std::vector<double>, 6> tr;
    for (auto& v : tr) v.resize(f.nt + 1);
    for (int j = 0; j <= f.nt; ++j) {
        const UniformSamples r = f.row(j);
        for (int m = 0; m < 3; ++m) {
            tr[m][j] = r.derivative(0, m);
            tr[3 + m][j] = r.derivative(f.nx, m);
        }
    }
    auto mk = [&](int idx) { return UniformSamples(0.0, f.T, tr[idx]); };
    out.traces.g = {mk(0), mk(1), mk(2)};
    out.traces.f = {mk(3), mk(4), mk(5)};
    out.q_T = f.row(f.nt);
    out.q0.q = f.row(0);
    return out;
}

}  // namespace mkdv
