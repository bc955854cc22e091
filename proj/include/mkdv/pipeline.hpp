#pragma once

// Run configuration and the command pipeline behind the mkdvut tool.

#include <filesystem>
#include <string>

#include "mkdv/io.hpp"

namespace mkdv {

struct RunConfig {
    KeyValues raw;
    std::filesystem::path base_dir;

    int lambda = -1;
    double L = 1.0;
    double T = 0.5;
    int nx = 128;
    int nt = 512;

    double R_min = 1.0;
    /// Fixed circle radius; 0 selects R with the argument principle.
    double R = 0.0;
    double K_max = 12.0;
    int panels_per_unit = 2;
    int nodes_per_panel = 8;

    double tol_integrator = 1e-10;
    double tol_gr = 1e-4;
    double tol_rh = 1e-8;
    double tol_reconstruction = 1e-2;
    double tol_corner = 1e-6;
    double max_second_difference = 1.0;

    std::filesystem::path profile = "profile.dat";
    std::filesystem::path traces = "traces.dat";
    std::filesystem::path q_T = "qT.dat";
    std::filesystem::path field = "field.dat";

    std::string generator = "wave";
    double kappa = 1.0;
    double x0 = 0.5;

    int rh_nx = 4;
    int rh_nt = 2;

    std::filesystem::path field_a;
    std::filesystem::path field_b;

    /// Throws InputError on unknown keys or bad values; resolves paths against base_dir.
    static RunConfig from_key_values(const KeyValues& kv, const std::filesystem::path& base_dir);
    static RunConfig load(const std::filesystem::path& path);

    ModelParams params() const { return {lambda, L, T}; }
    std::uint64_t hash() const { return config_hash(raw); }
};

struct CommandOptions {
    std::filesystem::path out_dir = ".";
    bool override_gr = false;
    bool quiet = false;
};

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitNumerical = 3, kExitIncompatible = 4 };

int cmd_generate(const RunConfig& cfg, const CommandOptions& opt);
int cmd_spectra(const RunConfig& cfg, const CommandOptions& opt);
int cmd_grcheck(const RunConfig& cfg, const CommandOptions& opt);
int cmd_rhsolve(const RunConfig& cfg, const CommandOptions& opt);
int cmd_compare(const RunConfig& cfg, const CommandOptions& opt);

/// Dispatches `verb`, mapping library errors to exit codes and printing
/// the message to stderr.
int run_command(const std::string& verb, const std::filesystem::path& config_path, const CommandOptions& opt);

}  // namespace mkdv
