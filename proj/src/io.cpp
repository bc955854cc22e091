#include "mkdv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mkdv/errors.hpp"

namespace mkdv {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool near_equal(double a, double b, double scale) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(scale)); }

}  // namespace

KeyValues parse_key_values(const std::string& text, const std::string& source) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InputError(source + ":" + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw InputError(source + ":" + std::to_string(lineno) + ": empty key");
        if (!kv.emplace(key, val).second) {
            throw InputError(source + ":" + std::to_string(lineno) + ": repeated key '" + key + "'");
        }
    }
    return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) { return parse_key_values(read_file(path), path.string()); }

void write_key_values(const std::filesystem::path& path, const KeyValues& kv, const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    for (const auto& h : header) out << "# " << h << '\n';
    for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
}

std::uint64_t config_hash(const KeyValues& kv) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [k, v] : kv) feed(k + "=" + v + "\n");
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw InputError("table has no column '" + name + "'");
}

void write_table(const std::filesystem::path& path, const Table& t) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    for (const auto& h : t.header) out << "# " << h << '\n';
    out << "# columns:";
    for (const auto& c : t.columns) out << ' ' << c;
    out << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << fmt(r[i]);
        out << '\n';
    }
}

Table read_table(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    Table t;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            if (body.rfind("columns:", 0) == 0) {
                std::istringstream cs(body.substr(8));
                std::string c;
                t.columns.clear();
                while (cs >> c) t.columns.push_back(c);
            } else {
                t.header.push_back(body);
            }
            continue;
        }
        if (t.columns.empty()) throw InputError(path.string() + ":" + std::to_string(lineno) + ": data before column header");
        std::istringstream ls(line);
        std::vector<double> row;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) {
                throw InputError(path.string() + ":" + std::to_string(lineno) + ": column " +
                                 std::to_string(row.size() + 1) + ": not a number '" + tok + "'");
            }
            row.push_back(v);
        }
        if (row.size() != t.columns.size()) {
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(t.columns.size()) + " columns, found " + std::to_string(row.size()));
        }
        t.rows.push_back(std::move(row));
    }
    if (t.columns.empty()) throw InputError(path.string() + ": no column header");
    return t;
}

UniformSamples samples_from_table(const Table& t, const std::string& xcol, const std::string& vcol) {
    const std::size_t ix = t.column(xcol);
    const std::size_t iv = t.column(vcol);
    if (t.rows.size() < 2) throw InputError("table needs at least two rows");
    const double a = t.rows.front()[ix];
    const double b = t.rows.back()[ix];
    const int n = static_cast<int>(t.rows.size()) - 1;
    std::vector<double> v(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double expect = a + (b - a) * static_cast<double>(i) / n;
        if (!near_equal(t.rows[i][ix], expect, b)) {
            throw InputError("column '" + xcol + "' is not equispaced at row " + std::to_string(i + 1));
        }
        v[i] = t.rows[i][iv];
    }
    return {a, b, std::move(v)};
}

Table profile_table(const InitialProfile& p) {
    Table t;
    t.columns = {"x", "q"};
    for (int i = 0; i <= p.q.intervals(); ++i) t.rows.push_back({p.q.node(i), p.q.v[i]});
    return t;
}

InitialProfile profile_from_table(const Table& t) { return {samples_from_table(t, "x", "q")}; }

Table traces_table(const BoundaryTraces& tr) {
    Table t;
    t.columns = {"t", "g0", "g1", "g2", "f0", "f1", "f2"};
    for (int j = 0; j <= tr.g.h0.intervals(); ++j) {
        t.rows.push_back({tr.g.h0.node(j), tr.g.h0.v[j], tr.g.h1.v[j], tr.g.h2.v[j], tr.f.h0.v[j], tr.f.h1.v[j],
                          tr.f.h2.v[j]});
    }
    return t;
}

BoundaryTraces traces_from_table(const Table& t) {
    BoundaryTraces tr;
    tr.g = {samples_from_table(t, "t", "g0"), samples_from_table(t, "t", "g1"), samples_from_table(t, "t", "g2")};
    tr.f = {samples_from_table(t, "t", "f0"), samples_from_table(t, "t", "f1"), samples_from_table(t, "t", "f2")};
    return tr;
}

Table field_table(const FieldGrid& f) {
    Table t;
    t.columns = {"x", "t", "q"};
    for (int j = 0; j <= f.nt; ++j) {
        for (int i = 0; i <= f.nx; ++i) t.rows.push_back({f.x(i), f.t(j), f.at(i, j)});
    }
    return t;
}

FieldGrid field_from_table(const Table& t) {
    const std::size_t ix = t.column("x");
    const std::size_t it = t.column("t");
    const std::size_t iq = t.column("q");
    if (t.rows.empty()) throw InputError("field table is empty");
    int nx = 0;
    while (nx + 1 < static_cast<int>(t.rows.size()) && t.rows[nx + 1][it] == t.rows[0][it]) ++nx;
    const std::size_t per_row = static_cast<std::size_t>(nx) + 1;
    if (nx < 1 || t.rows.size() % per_row != 0) throw InputError("field table is not a rectangular grid");
    const int nt = static_cast<int>(t.rows.size() / per_row) - 1;
    if (nt < 1) throw InputError("field table needs at least two time rows");
    const double L = t.rows[nx][ix];
    const double T = t.rows.back()[it];
    FieldGrid f(L, T, nx, nt);
    for (int j = 0; j <= nt; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const auto& r = t.rows[static_cast<std::size_t>(j) * per_row + i];
            if (!near_equal(r[ix], f.x(i), L) || !near_equal(r[it], f.t(j), T)) {
                throw InputError("field table row " + std::to_string(j * per_row + i + 1) + " is off the grid");
            }
            f.at(i, j) = r[iq];
        }
    }
    return f;
}

}  // namespace mkdv
