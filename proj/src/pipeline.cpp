#include "mkdv/pipeline.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include "mkdv/contour.hpp"
#include "mkdv/errors.hpp"
#include "mkdv/global_relation.hpp"
#include "mkdv/jump.hpp"
#include "mkdv/oracle.hpp"
#include "mkdv/rh_solver.hpp"
#include "mkdv/spectral.hpp"

#ifndef MKDV_VERSION
#define MKDV_VERSION "unknown"
#endif

namespace mkdv {

namespace {

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || v.empty()) throw InputError("config: '" + key + "' is not a number: " + v);
    return d;
}

int to_int(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (d != std::floor(d) || std::abs(d) > 1e9) throw InputError("config: '" + key + "' must be an integer");
    return static_cast<int>(d);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::vector<std::string> header_lines(const RunConfig& cfg, const std::string& what) {
    return {std::string("mkdvut ") + MKDV_VERSION, "config_hash " + hex64(cfg.hash()), what};
}

struct LoadedData {
    InitialProfile q0;
    BoundaryTraces traces;
};

LoadedData load_data(const RunConfig& cfg) {
    LoadedData d;
    d.q0 = profile_from_table(read_table(cfg.profile));
    d.traces = traces_from_table(read_table(cfg.traces));
    d.q0.validate(cfg.max_second_difference);
    d.traces.validate();
    if (std::abs(d.q0.L() - cfg.L) > 1e-12 * cfg.L) throw InputError("profile length differs from config L");
    if (std::abs(d.traces.T() - cfg.T) > 1e-12 * cfg.T) throw InputError("trace horizon differs from config T");
    return d;
}

IntegratorOptions integrator_options(const RunConfig& cfg) {
    IntegratorOptions o;
    o.tol = cfg.tol_integrator;
    return o;
}

void say(const CommandOptions& opt, const std::string& s) {
    if (!opt.quiet) std::cout << s << '\n';
}

std::filesystem::path out_path(const CommandOptions& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    return opt.out_dir / name;
}

enum class Verdict { Compatible, Incompatible, Inconclusive };

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Compatible:
            return "compatible";
        case Verdict::Incompatible:
            return "incompatible";
        default:
            return "inconclusive";
    }
}

struct GRRun {
    GRReport report;
    Verdict verdict = Verdict::Inconclusive;
};

GRRun run_gr(const RunConfig& cfg, const SpectralData& spec, const CommandOptions& opt) {
    const UniformSamples qT = samples_from_table(read_table(cfg.q_T), "x", "q");
    qT.validate("q(., T)", 8);
    GRRun run;
    run.report = gr_report(spec, qT, default_gr_kset(cfg.R_min, cfg.K_max));
    const double m = run.report.max_abs;
    if (m <= cfg.tol_gr) {
        run.verdict = Verdict::Compatible;
    } else if (m > 100.0 * cfg.tol_gr) {
        run.verdict = Verdict::Incompatible;
    }

    Table t;
    t.header = header_lines(cfg, "global relation residual, finite T");
    t.columns = {"k_re", "k_im", "abs_residual", "clamped", "c_re", "c_im"};
    for (const auto& s : run.report.samples) {
        t.rows.push_back({s.k.real(), s.k.imag(), s.clamped ? 0.0 : std::abs(s.residual), s.clamped ? 1.0 : 0.0,
                          s.c.real(), s.c.imag()});
    }
    t.header.push_back("summary max=" + fmt(m) + " rms=" + fmt(run.report.rms) +
                       " clamped=" + std::to_string(run.report.clamped) + " verdict=" + verdict_name(run.verdict));
    write_table(out_path(opt, "gr_report.dat"), t);
    say(opt, std::string("grcheck: max residual ") + fmt(m) + ", verdict " + verdict_name(run.verdict));
    return run;
}

}  // namespace

RunConfig RunConfig::from_key_values(const KeyValues& kv, const std::filesystem::path& base_dir) {
    RunConfig c;
    c.raw = kv;
    c.base_dir = base_dir;
    bool have_x0 = false;
    auto path = [&](const std::string& v) {
        std::filesystem::path p(v);
        return p.is_absolute() ? p : base_dir / p;
    };
    for (const auto& [k, v] : kv) {
        if (k == "lambda") c.lambda = to_int(k, v);
        else if (k == "L") c.L = to_double(k, v);
        else if (k == "T") c.T = to_double(k, v);
        else if (k == "nx") c.nx = to_int(k, v);
        else if (k == "nt") c.nt = to_int(k, v);
        else if (k == "R_min") c.R_min = to_double(k, v);
        else if (k == "R") c.R = to_double(k, v);
        else if (k == "K_max") c.K_max = to_double(k, v);
        else if (k == "panels_per_unit") c.panels_per_unit = to_int(k, v);
        else if (k == "nodes_per_panel") c.nodes_per_panel = to_int(k, v);
        else if (k == "tol_integrator") c.tol_integrator = to_double(k, v);
        else if (k == "tol_gr") c.tol_gr = to_double(k, v);
        else if (k == "tol_rh") c.tol_rh = to_double(k, v);
        else if (k == "tol_reconstruction") c.tol_reconstruction = to_double(k, v);
        else if (k == "tol_corner") c.tol_corner = to_double(k, v);
        else if (k == "max_second_difference") c.max_second_difference = to_double(k, v);
        else if (k == "profile") c.profile = path(v);
        else if (k == "traces") c.traces = path(v);
        else if (k == "q_T") c.q_T = path(v);
        else if (k == "field") c.field = path(v);
        else if (k == "generator") c.generator = v;
        else if (k == "kappa") c.kappa = to_double(k, v);
        else if (k == "x0") {
            c.x0 = to_double(k, v);
            have_x0 = true;
        } else if (k == "rh_nx") c.rh_nx = to_int(k, v);
        else if (k == "rh_nt") c.rh_nt = to_int(k, v);
        else if (k == "field_a") c.field_a = path(v);
        else if (k == "field_b") c.field_b = path(v);
        else throw InputError("config: unknown key '" + k + "'");
    }
    if (!kv.contains("profile")) c.profile = base_dir / c.profile;
    if (!kv.contains("traces")) c.traces = base_dir / c.traces;
    if (!kv.contains("q_T")) c.q_T = base_dir / c.q_T;
    if (!kv.contains("field")) c.field = base_dir / c.field;
    if (!have_x0) c.x0 = 0.5 * c.L;

    c.params().validate();
    if (c.nx < 8 || c.nt < 8) throw InputError("config: nx and nt must be >= 8");
    if (!(c.R_min > 0.0) || c.R < 0.0) throw InputError("config: R_min must be positive and R non-negative");
    if (!(c.K_max > c.R_min) && !(c.R > 0.0 && c.K_max >= c.R)) throw InputError("config: K_max must exceed R_min");
    if (c.panels_per_unit < 1 || c.nodes_per_panel < 2) throw InputError("config: bad panelization");
    for (double tol : {c.tol_integrator, c.tol_gr, c.tol_rh, c.tol_reconstruction, c.tol_corner, c.max_second_difference}) {
        if (!(tol > 0.0)) throw InputError("config: tolerances must be positive");
    }
    if (c.generator != "wave" && c.generator != "fd") throw InputError("config: generator must be wave or fd");
    if (c.rh_nx < 0 || c.rh_nt < 0) throw InputError("config: rh_nx and rh_nt must be >= 0");
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    return from_key_values(read_key_values(path), path.has_parent_path() ? path.parent_path() : ".");
}

int cmd_generate(const RunConfig& cfg, const CommandOptions& opt) {
    GridSpec grid{cfg.L, cfg.T, cfg.nx, cfg.nt};
    WaveData w = exact_traveling_wave(cfg.kappa, cfg.x0, cfg.lambda, grid);
    FieldGrid field = w.field;
    InitialProfile q0 = w.q0;
    BoundaryTraces traces = w.traces;
    UniformSamples qT = w.q_T;
    double fd_error = 0.0;
    if (cfg.generator == "fd") {
        field = fd_solve_ibvp(w.q0, w.traces.g.h0, w.traces.g.h1, w.traces.f.h0, cfg.lambda, cfg.nt);
        for (std::size_t i = 0; i < field.q.size(); ++i) fd_error = std::max(fd_error, std::abs(field.q[i] - w.field.q[i]));
        const ExtractedData ex = extract_traces(field);
        traces = ex.traces;
        qT = ex.q_T;
    }

    auto with_header = [&](Table t, const std::string& what) {
        t.header = header_lines(cfg, what);
        return t;
    };
    write_table(out_path(opt, "profile.dat"), with_header(profile_table(q0), "initial profile"));
    write_table(out_path(opt, "traces.dat"), with_header(traces_table(traces), "boundary traces"));
    write_table(out_path(opt, "qT.dat"), with_header(profile_table(InitialProfile{qT}), "q(x, T)"));
    write_table(out_path(opt, "field.dat"), with_header(field_table(field), "oracle field"));

    KeyValues man;
    man["generator"] = cfg.generator;
    man["kappa"] = fmt(cfg.kappa);
    man["x0"] = fmt(cfg.x0);
    man["lambda"] = std::to_string(cfg.lambda);
    man["L"] = fmt(cfg.L);
    man["T"] = fmt(cfg.T);
    man["nx"] = std::to_string(cfg.nx);
    man["nt"] = std::to_string(cfg.nt);
    man["speed"] = fmt(w.speed);
    man["certification_residual"] = fmt(w.certification_residual);
    man["pde_residual_output_grid"] = fmt(pde_residual(field, cfg.lambda));
    man["fd_vs_exact_max"] = fmt(fd_error);
    man["corner_mismatch_max"] = fmt(corner_compatibility(q0, traces).max());
    man["config_hash"] = hex64(cfg.hash());
    man["version"] = MKDV_VERSION;
    write_key_values(out_path(opt, "manifest.txt"), man, {std::string("mkdvut ") + MKDV_VERSION});
    say(opt, "generate: speed " + fmt(w.speed) + ", certification residual " + fmt(w.certification_residual));
    return kExitOk;
}

int cmd_spectra(const RunConfig& cfg, const CommandOptions& opt) {
    LoadedData d = load_data(cfg);
    const CornerReport corner = corner_compatibility(d.q0, d.traces);
    SpectralData spec(d.q0, d.traces, cfg.params(), integrator_options(cfg));
    const auto ks = default_gr_kset(cfg.R_min, cfg.K_max);

    const char* names[] = {"s", "S", "S1"};
    const char* pairs[][2] = {{"a", "b"}, {"A", "B"}, {"A1", "B1"}};
    double worst_det = 0.0;
    double worst_sym = 0.0;
    for (int m = 0; m < 3; ++m) {
        Table t;
        t.header = header_lines(cfg, std::string("spectral matrix ") + names[m]);
        t.columns = {"k_re", "k_im", std::string(pairs[m][0]) + "_re", std::string(pairs[m][0]) + "_im",
                     std::string(pairs[m][1]) + "_re", std::string(pairs[m][1]) + "_im", "det_err", "sym_err"};
        for (cplx k : ks) {
            const SpectralPoint& p = spec.at(k);
            const SpectralPoint& pc = spec.at(std::conj(k));
            const Mat2C& mk = m == 0 ? p.s : (m == 1 ? p.S : p.S1);
            const Mat2C& mc = m == 0 ? pc.s : (m == 1 ? pc.S : pc.S1);
            const ScalarPair ab = scalar_entries(mk);
            const double det_err = std::abs(mk.det() - 1.0);
            const double sym_err = std::max(std::abs(mk.m11 - std::conj(mc.m22)),
                                            std::abs(mk.m21 - static_cast<double>(cfg.lambda) * std::conj(mc.m12)));
            worst_det = std::max(worst_det, det_err);
            worst_sym = std::max(worst_sym, sym_err);
            t.rows.push_back({k.real(), k.imag(), ab.a.real(), ab.a.imag(), ab.b.real(), ab.b.imag(), det_err, sym_err});
        }
        t.header.push_back("audit max_det_err=" + fmt(worst_det) + " max_sym_err=" + fmt(worst_sym) +
                           " corner_mismatch=" + fmt(corner.max()));
        write_table(out_path(opt, std::string("spectra_") + names[m] + ".dat"), t);
    }
    say(opt, "spectra: max |det - 1| " + fmt(worst_det) + ", max symmetry error " + fmt(worst_sym) +
                 ", corner mismatch " + fmt(corner.max()));
    return kExitOk;
}

int cmd_grcheck(const RunConfig& cfg, const CommandOptions& opt) {
    LoadedData d = load_data(cfg);
    SpectralData spec(d.q0, d.traces, cfg.params(), integrator_options(cfg));
    const GRRun run = run_gr(cfg, spec, opt);
    if (run.verdict == Verdict::Incompatible && !opt.override_gr) return kExitIncompatible;
    return kExitOk;
}

int cmd_rhsolve(const RunConfig& cfg, const CommandOptions& opt) {
    LoadedData d = load_data(cfg);
    SpectralData spec(d.q0, d.traces, cfg.params(), integrator_options(cfg));
    const GRRun gr = run_gr(cfg, spec, opt);
    if (gr.verdict != Verdict::Compatible && !opt.override_gr) {
        std::cerr << "rhsolve: global relation verdict is " << verdict_name(gr.verdict)
                  << "; rerun with --override-gr to solve anyway\n";
        return kExitIncompatible;
    }

    double R = cfg.R;
    if (R <= 0.0) {
        ZeroTargets zt;
        zt.a = [&](cplx k) { return spec.at(k).a(); };
        zt.d = [&](cplx k) { return spec.at(k).d(); };
        zt.d1 = [&](cplx k) { return spec.at(k).d1(); };
        R = choose_R(zt, cfg.R_min);
    }
    const ContourSigma sigma = build_sigma(R, std::max(cfg.K_max, R), cfg.panels_per_unit, cfg.nodes_per_panel);
    const CauchyOperator op(sigma);

    std::vector<std::pair<double, double>> pts;
    for (int j = 0; j <= cfg.rh_nt; ++j) {
        for (int i = 0; i <= cfg.rh_nx; ++i) {
            const double x = cfg.rh_nx == 0 ? 0.0 : cfg.L * i / cfg.rh_nx;
            const double t = cfg.rh_nt == 0 ? 0.0 : cfg.T * j / cfg.rh_nt;
            pts.emplace_back(x, t);
        }
    }
    RHOptions ro;
    const auto field = solve_field(op, spec, pts, ro);

    Table t;
    t.header = header_lines(cfg, "RH reconstruction");
    t.header.push_back("R " + fmt(R) + " K_max " + fmt(sigma.K_max) + " nodes " + std::to_string(sigma.size()));
    t.header.push_back(std::string("gr_verdict ") + verdict_name(gr.verdict) + (opt.override_gr ? " override=yes" : ""));
    t.columns = {"x", "t", "q", "imag", "rcond", "collocation_residual"};
    double worst_res = 0.0;
    double t0_err = 0.0;
    double x0_err = 0.0;
    for (const auto& fp : field) {
        t.rows.push_back({fp.x, fp.t, fp.q, fp.rec.imag, fp.report.rcond, fp.report.collocation_residual});
        worst_res = std::max(worst_res, fp.report.collocation_residual);
        if (fp.t == 0.0) t0_err = std::max(t0_err, std::abs(fp.q - d.q0.q(fp.x)));
        if (fp.x == 0.0) x0_err = std::max(x0_err, std::abs(fp.q - d.traces.g.h0(fp.t)));
    }
    t.header.push_back("audit t0_max_error=" + fmt(t0_err) + " x0_max_error=" + fmt(x0_err) +
                       " max_collocation_residual=" + fmt(worst_res) + " tol_reconstruction=" +
                       fmt(cfg.tol_reconstruction) + " tol_rh=" + fmt(cfg.tol_rh));
    write_table(out_path(opt, "rh_field.dat"), t);
    say(opt, "rhsolve: R " + fmt(R) + ", " + std::to_string(sigma.size()) + " nodes, t=0 error " + fmt(t0_err) +
                 ", x=0 error " + fmt(x0_err) + ", collocation residual " + fmt(worst_res));
    return worst_res <= cfg.tol_rh ? kExitOk : kExitNumerical;
}

int cmd_compare(const RunConfig& cfg, const CommandOptions& opt) {
    if (cfg.field_a.empty() || cfg.field_b.empty()) throw InputError("compare: set field_a and field_b in the config");
    const Table a = read_table(cfg.field_a);
    const Table b = read_table(cfg.field_b);
    const std::size_t ax = a.column("x"), at = a.column("t"), aq = a.column("q");
    const std::size_t bx = b.column("x"), bt = b.column("t"), bq = b.column("q");
    if (a.rows.size() != b.rows.size()) throw InputError("compare: grids differ in size");
    double worst = 0.0;
    double sumsq = 0.0;
    std::map<double, std::pair<double, double>> per_row;  // t -> (x, |diff|)
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& ra = a.rows[i];
        const auto& rb = b.rows[i];
        if (std::abs(ra[ax] - rb[bx]) > 1e-9 || std::abs(ra[at] - rb[bt]) > 1e-9) {
            throw InputError("compare: grids differ at row " + std::to_string(i + 1));
        }
        const double diff = std::abs(ra[aq] - rb[bq]);
        worst = std::max(worst, diff);
        sumsq += diff * diff;
        auto& slot = per_row[ra[at]];
        if (diff >= slot.second) slot = {ra[ax], diff};
    }
    const double rms = a.rows.empty() ? 0.0 : std::sqrt(sumsq / static_cast<double>(a.rows.size()));
    Table t;
    t.header = header_lines(cfg, "field difference");
    t.header.push_back("summary max=" + fmt(worst) + " rms=" + fmt(rms));
    t.columns = {"t", "worst_x", "worst_abs_diff"};
    for (const auto& [tt, xd] : per_row) t.rows.push_back({tt, xd.first, xd.second});
    write_table(out_path(opt, "compare.dat"), t);
    say(opt, "compare: max " + fmt(worst) + ", rms " + fmt(rms));
    return kExitOk;
}

int run_command(const std::string& verb, const std::filesystem::path& config_path, const CommandOptions& opt) {
    try {
        const RunConfig cfg = RunConfig::load(config_path);
        if (verb == "generate") return cmd_generate(cfg, opt);
        if (verb == "spectra") return cmd_spectra(cfg, opt);
        if (verb == "grcheck") return cmd_grcheck(cfg, opt);
        if (verb == "rhsolve") return cmd_rhsolve(cfg, opt);
        if (verb == "compare") return cmd_compare(cfg, opt);
        std::cerr << "unknown command '" << verb << "'\n";
        return kExitInput;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace mkdv
