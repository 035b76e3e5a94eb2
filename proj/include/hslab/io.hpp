#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hslab/field.hpp"

namespace hslab::io {

/// Shortest decimal form that round-trips an IEEE double exactly.
std::string format_double(double v);

/// 64-bit FNV-1a content hashes; used by the run manifest.
std::uint64_t fnv1a(std::string_view bytes);
std::uint64_t fnv1a_file(const std::filesystem::path& path);
std::string hash_hex(std::uint64_t h);

/// Field snapshot on disk: a plain-text header (nx, ny, Lx, Ly, boundary,
/// t, eps) followed by the row-major values as little-endian IEEE-754
/// doubles in one binary block.
struct FieldSnapshot {
    ScalarField2D field;
    double t = 0.0;
    double eps = 0.0;
};

void write_field_snapshot(const std::filesystem::path& path, const ScalarField2D& f, double t,
                          double eps);
FieldSnapshot read_field_snapshot(const std::filesystem::path& path);

/// Matrix-form CSV export of a field (one line per row j); intended for
/// small grids.
void write_field_csv(const std::filesystem::path& path, const ScalarField2D& f);

/// Numeric CSV with a mandatory header line.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Column index by name; fails with MalformedCsv when absent.
    std::size_t col(const std::string& name) const;
    bool has_col(const std::string& name) const;
};

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);
CsvTable read_csv(const std::filesystem::path& path);

/// Structured key-value report: one "key = value" per line, '#' comments.
void write_report(const std::filesystem::path& path,
                  std::span<const std::pair<std::string, std::string>> entries);
std::map<std::string, std::string> read_report(const std::filesystem::path& path);

/// Writes <dir>/manifest.txt listing every named file with its size and
/// FNV-1a hash, plus the configuration hash, the seed, and tool versions.
void write_manifest(const std::filesystem::path& dir, std::uint64_t config_hash,
                    std::uint64_t seed, std::vector<std::string> files);

} // namespace hslab::io
