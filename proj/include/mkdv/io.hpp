#pragma once

// Plain-text formats: key=value configs and manifests, '#'-headed tables.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mkdv/oracle.hpp"
#include "mkdv/sampled.hpp"

namespace mkdv {

using KeyValues = std::map<std::string, std::string>;

/// Parses "key = value" lines; '#' starts a comment; blank lines are skipped.
/// Throws InputError naming `source` and the line on malformed or repeated keys.
KeyValues parse_key_values(const std::string& text, const std::string& source);
KeyValues read_key_values(const std::filesystem::path& path);
void write_key_values(const std::filesystem::path& path, const KeyValues& kv,
                      const std::vector<std::string>& header = {});

/// 64-bit FNV-1a of the canonical "key=value\n" listing (keys sorted).
std::uint64_t config_hash(const KeyValues& kv);
std::string hex64(std::uint64_t v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    /// Free-form header lines (without the leading '#').
    std::vector<std::string> header;

    /// Index of column `name`; throws InputError if absent.
    std::size_t column(const std::string& name) const;
};

/// Header lines as "# text", then "# columns: a b c", then one row per line
/// with every value printed to 17 significant digits.
void write_table(const std::filesystem::path& path, const Table& t);

/// Reads a table written by write_table. Reports line and column on bad numbers.
Table read_table(const std::filesystem::path& path);

/// Profile table: columns x q.
Table profile_table(const InitialProfile& p);
InitialProfile profile_from_table(const Table& t);

/// Trace table: columns t g0 g1 g2 f0 f1 f2.
Table traces_table(const BoundaryTraces& tr);
BoundaryTraces traces_from_table(const Table& t);

/// Field table: columns x t q, x fastest.
Table field_table(const FieldGrid& f);
FieldGrid field_from_table(const Table& t);

/// Samples from a table with equispaced first column, second column values.
UniformSamples samples_from_table(const Table& t, const std::string& xcol, const std::string& vcol);

}  // namespace mkdv
