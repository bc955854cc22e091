#pragma once

// Compatible data sets with known solutions: the certified traveling wave
// and a method-of-lines solver for the initial-boundary value problem.

#include <array>
#include <vector>

#include "mkdv/lax.hpp"
#include "mkdv/sampled.hpp"

namespace mkdv {

/// q on an (nx + 1) x (nt + 1) grid over [0, L] x [0, T], row-major in t.
struct FieldGrid {
    double L = 1.0;
    double T = 1.0;
    int nx = 0;
    int nt = 0;
    std::vector<double> q;

    FieldGrid() = default;
    FieldGrid(double L_, double T_, int nx_, int nt_);

    double dx() const { return L / nx; }
    double dt() const { return T / nt; }
    double x(int i) const { return L * i / nx; }
    double t(int j) const { return T * j / nt; }
    double& at(int i, int j) { return q[static_cast<std::size_t>(j) * (nx + 1) + i]; }
    double at(int i, int j) const { return q[static_cast<std::size_t>(j) * (nx + 1) + i]; }

    /// q(., t_j) as samples on [0, L].
    UniformSamples row(int j) const;
    /// q(x_i, .) as samples on [0, T].
    UniformSamples column(int i) const;

    /// Sample at the grid node (x, t). Throws DomainError if no node lies within 1e-9.
    double at_point(double x, double t) const;
};

/// Max over interior nodes of |q_t - q_xxx + 6 lambda q^2 q_x| with fourth-order
/// centered differences in x and second-order centered differences in t.
/// Throws InputError for nx < 6 or nt < 2.
double pde_residual(const FieldGrid& f, int lambda);

struct GridSpec {
    double L = 1.0;
    double T = 0.5;
    int nx = 128;
    int nt = 512;
};

struct WaveData {
    double kappa = 0.0;
    double x0 = 0.0;
    double speed = 0.0;
    double certification_residual = 0.0;
    FieldGrid field;
    InitialProfile q0;
    BoundaryTraces traces;
    UniformSamples q_T;
};

struct WaveCertification {
    /// Refined grid used for the residual check.
    int nx = 256;
    int nt = 2048;
    double tol = 1e-6;
};

/// q = kappa sech(kappa (x - c t - x0)) with the speed c chosen among the
/// candidate branches by the smallest PDE residual on a refined grid; throws
/// NumericalError if that residual exceeds cert.tol. Requires lambda = -1
/// unless kappa = 0. Traces use analytic derivatives.
WaveData exact_traveling_wave(double kappa, double x0, int lambda, const GridSpec& grid,
                              const WaveCertification& cert = {});

/// Analytic q, q_x, q_xx of the wave at (x, t).
std::array<double, 3> traveling_wave_jet(double kappa, double x0, double speed, double x, double t);

struct FDOptions {
    int newton_max = 20;
    double newton_tol = 1e-12;
};

/// Method of lines with trapezoidal time stepping. Enforces q(0) = g0,
/// q_x(0) = g1, q(L) = f0; the PDE is imposed at nodes 2 .. nx - 1.
/// Controls are sampled on the output time grid.
FieldGrid fd_solve_ibvp(const InitialProfile& q0, const UniformSamples& g0, const UniformSamples& g1,
                        const UniformSamples& f0, int lambda, int nt, const FDOptions& opt = {});

struct ExtractedData {
    BoundaryTraces traces;
    UniformSamples q_T;
    InitialProfile q0;
};

/// One-sided fourth-order derivatives at x = 0 and x = L on every time row.
ExtractedData extract_traces(const FieldGrid& f);

}  // namespace mkdv
