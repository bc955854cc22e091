#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "mkdv/errors.hpp"
#include "mkdv/pipeline.hpp"

using namespace mkdv;
namespace fs = std::filesystem;

namespace {

struct Workdir {
    fs::path dir;
    explicit Workdir(const std::string& tag) {
        std::random_device rd;
        dir = fs::temp_directory_path() / ("mkdv_pipe_" + tag + "_" + std::to_string(rd()));
        fs::create_directories(dir);
    }
    ~Workdir() { fs::remove_all(dir); }

    fs::path config(const std::string& extra) const {
        std::ofstream out(dir / "run.cfg");
        out << "lambda = -1\nL = 1\nT = 0.5\nnx = 64\nnt = 256\nR = 1.5\nK_max = 3\n"
               "panels_per_unit = 1\nnodes_per_panel = 8\nrh_nx = 1\nrh_nt = 0\n"
            << extra;
        return dir / "run.cfg";
    }
    CommandOptions opts() const {
        CommandOptions o;
        o.out_dir = dir;
        o.quiet = true;
        return o;
    }
    std::string header(const std::string& file) const {
        return read_table(dir / file).header.back();
    }
};

}  // namespace

TEST_CASE("config: defaults, path resolution and validation") {
    const RunConfig c = RunConfig::from_key_values({{"T", "0.25"}, {"q_T", "/abs/q.dat"}}, "/base");
    CHECK(c.T == 0.25);
    CHECK(c.x0 == 0.5);
    CHECK(c.profile == fs::path("/base/profile.dat"));
    CHECK(c.q_T == fs::path("/abs/q.dat"));
    CHECK_THROWS_AS(RunConfig::from_key_values({{"bogus", "1"}}, "."), InputError);
    CHECK_THROWS_AS(RunConfig::from_key_values({{"nx", "12.5"}}, "."), InputError);
    CHECK_THROWS_AS(RunConfig::from_key_values({{"L", "1x"}}, "."), InputError);
    CHECK_THROWS_AS(RunConfig::from_key_values({{"lambda", "2"}}, "."), InputError);
    CHECK_THROWS_AS(RunConfig::from_key_values({{"generator", "spline"}}, "."), InputError);
    CHECK(RunConfig::from_key_values({{"L", "1"}}, ".").hash() != RunConfig::from_key_values({{"L", "1.0"}}, ".").hash());
}

TEST_CASE("generate, spectra, grcheck and rhsolve on the traveling wave") {
    Workdir w("wave");
    const fs::path cfg = w.config("");
    const CommandOptions o = w.opts();
    REQUIRE(run_command("generate", cfg, o) == kExitOk);
    const KeyValues man = read_key_values(w.dir / "manifest.txt");
    CHECK(std::stod(man.at("certification_residual")) < 1e-6);
    CHECK(man.at("config_hash") == hex64(RunConfig::load(cfg).hash()));

    CHECK(run_command("spectra", cfg, o) == kExitOk);
    CHECK(fs::exists(w.dir / "spectra_S1.dat"));
    CHECK(run_command("grcheck", cfg, o) == kExitOk);
    CHECK(w.header("gr_report.dat").find("verdict=compatible") != std::string::npos);
    CHECK(run_command("rhsolve", cfg, o) == kExitOk);
    const Table rh = read_table(w.dir / "rh_field.dat");
    CHECK(rh.rows.size() == 2);
}

TEST_CASE("generate with the method-of-lines generator records its error") {
    Workdir w("fd");
    const fs::path cfg = w.config("generator = fd\n");
    REQUIRE(run_command("generate", cfg, w.opts()) == kExitOk);
    const KeyValues man = read_key_values(w.dir / "manifest.txt");
    const double err = std::stod(man.at("fd_vs_exact_max"));
    CHECK(err > 0.0);
    CHECK(err < 1e-3);
}

TEST_CASE("mismatched traces: exit 4 unless overridden") {
    Workdir w("bad");
    const fs::path cfg = w.config("");
    const CommandOptions o = w.opts();
    REQUIRE(run_command("generate", cfg, o) == kExitOk);
    Table tr = read_table(w.dir / "traces.dat");
    for (auto& r : tr.rows) {
        for (std::size_t c = 1; c < r.size(); ++c) r[c] = 0.0;
    }
    write_table(w.dir / "traces.dat", tr);

    CHECK(run_command("grcheck", cfg, o) == kExitIncompatible);
    CHECK(run_command("rhsolve", cfg, o) == kExitIncompatible);
    CommandOptions force = o;
    force.override_gr = true;
    CHECK(run_command("grcheck", cfg, force) == kExitOk);
    CHECK(run_command("rhsolve", cfg, force) == kExitOk);
    bool flagged = false;
    for (const auto& h : read_table(w.dir / "rh_field.dat").header) flagged = flagged || h.find("override=yes") != std::string::npos;
    CHECK(flagged);
}

TEST_CASE("exit codes for input and numerical failures") {
    Workdir w("codes");
    const CommandOptions o = w.opts();
    CHECK(run_command("generate", w.config("colour = red\n"), o) == kExitInput);
    CHECK(run_command("spectra", w.dir / "absent.cfg", o) == kExitInput);
    CHECK(run_command("bogus", w.config(""), o) == kExitInput);
    CHECK(run_command("spectra", w.config(""), o) == kExitInput);  // no data files yet

    REQUIRE(run_command("generate", w.config(""), o) == kExitOk);
    CHECK(run_command("rhsolve", w.config("tol_rh = 1e-300\n"), o) == kExitNumerical);
    CHECK(run_command("generate", w.config("kappa = -1\n"), o) == kExitInput);
}

TEST_CASE("compare reports the difference of two field files") {
    Workdir w("cmp");
    REQUIRE(run_command("generate", w.config(""), w.opts()) == kExitOk);
    fs::copy_file(w.dir / "field.dat", w.dir / "a.dat");
    REQUIRE(run_command("generate", w.config("generator = fd\n"), w.opts()) == kExitOk);
    const fs::path cfg = w.config("field_a = a.dat\nfield_b = field.dat\n");
    CHECK(run_command("compare", cfg, w.opts()) == kExitOk);
    const KeyValues man = read_key_values(w.dir / "manifest.txt");
    std::ostringstream expect;
    expect.precision(17);
    expect << "summary max=" << std::stod(man.at("fd_vs_exact_max"));
    CHECK(w.header("compare.dat").rfind(expect.str(), 0) == 0);
    CHECK(run_command("compare", w.config(""), w.opts()) == kExitInput);
}
