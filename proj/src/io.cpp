#include "hslab/io.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "hslab/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

namespace hslab::io {

namespace {

[[noreturn]] void io_fail(const std::filesystem::path& path, const std::string& what) {
    fail(ErrorCode::Io, path.string() + ": " + what);
}

double parse_double(std::string_view s, const std::filesystem::path& path, std::size_t line) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        fail(ErrorCode::MalformedCsv,
             path.string() + ":" + std::to_string(line) + ": not a number: '" +
                 std::string(s) + "'");
    return v;
}

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    // shortest precision that survives a parse round trip
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v)
            break;
    }
    return buf;
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        io_fail(path, "cannot open for hashing");
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)), in.gcount() > 0)
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_field_snapshot(const std::filesystem::path& path, const ScalarField2D& f, double t,
                          double eps) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        io_fail(path, "cannot open for writing");
    out << "hslab-field 1\n";
    out << "nx " << f.nx() << "\n";
    out << "ny " << f.ny() << "\n";
    out << "Lx " << format_double(f.Lx()) << "\n";
    out << "Ly " << format_double(f.Ly()) << "\n";
    out << "boundary " << (f.boundary() == BoundaryY::Periodic ? "periodic" : "fixed") << "\n";
    out << "t " << format_double(t) << "\n";
    out << "eps " << format_double(eps) << "\n";
    out << "data float64-le row-major\n";
    out.write(reinterpret_cast<const char*>(f.values().data()),
              static_cast<std::streamsize>(f.values().size() * sizeof(double)));
    if (!out)
        io_fail(path, "write failed");
}

FieldSnapshot read_field_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        io_fail(path, "cannot open");
    std::string line;
    if (!std::getline(in, line) || line != "hslab-field 1")
        io_fail(path, "not a field snapshot (bad magic)");

    std::size_t nx = 0, ny = 0;
    double Lx = 0, Ly = 0, t = 0, eps = 0;
    BoundaryY by = BoundaryY::Periodic;
    bool saw_data = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "data") {
            saw_data = true;
            break;
        }
        std::string value;
        ls >> value;
        if (key == "nx")
            nx = std::stoull(value);
        else if (key == "ny")
            ny = std::stoull(value);
        else if (key == "Lx")
            Lx = std::stod(value);
        else if (key == "Ly")
            Ly = std::stod(value);
        else if (key == "t")
            t = std::stod(value);
        else if (key == "eps")
            eps = std::stod(value);
        else if (key == "boundary")
            by = value == "fixed" ? BoundaryY::FixedValue : BoundaryY::Periodic;
        else
            io_fail(path, "unknown header key '" + key + "'");
    }
    if (!saw_data || nx == 0 || ny == 0 || !(Lx > 0.0) || !(Ly > 0.0))
        io_fail(path, "incomplete snapshot header");

    FieldSnapshot snap{ScalarField2D(nx, ny, Lx, Ly, by), t, eps};
    auto& vals = snap.field.values();
    in.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != vals.size() * sizeof(double))
        io_fail(path, "truncated data block");
    return snap;
}

void write_field_csv(const std::filesystem::path& path, const ScalarField2D& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        io_fail(path, "cannot open for writing");
    for (std::size_t j = 0; j < f.ny(); ++j) {
        for (std::size_t i = 0; i < f.nx(); ++i) {
            if (i)
                out << ',';
            out << format_double(f.at(i, j));
        }
        out << '\n';
    }
}

std::size_t CsvTable::col(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name)
            return i;
    fail(ErrorCode::MalformedCsv, "missing column '" + name + "'");
}

bool CsvTable::has_col(const std::string& name) const {
    return std::find(columns.begin(), columns.end(), name) != columns.end();
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        io_fail(path, "cannot open for writing");
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            fail(ErrorCode::MalformedCsv, path.string() + ": row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
    if (!out)
        io_fail(path, "write failed");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::MissingArtifact, path.string() + ": no such file");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        fail(ErrorCode::MalformedCsv, path.string() + ": empty file");

    auto split = [](std::string_view s) {
        std::vector<std::string_view> out;
        while (true) {
            const auto comma = s.find(',');
            out.push_back(trimmed(s.substr(0, comma)));
            if (comma == std::string_view::npos)
                break;
            s.remove_prefix(comma + 1);
        }
        return out;
    };

    for (auto name : split(line))
        table.columns.emplace_back(name);
    if (table.columns.empty() || table.columns.front().empty())
        fail(ErrorCode::MalformedCsv, path.string() + ": empty header");

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty())
            continue;
        const auto cells = split(line);
        if (cells.size() != table.columns.size())
            fail(ErrorCode::MalformedCsv,
                 path.string() + ":" + std::to_string(lineno) + ": expected " +
                     std::to_string(table.columns.size()) + " cells, got " +
                     std::to_string(cells.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (auto cell : cells)
            row.push_back(parse_double(cell, path, lineno));
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_report(const std::filesystem::path& path,
                  std::span<const std::pair<std::string, std::string>> entries) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        io_fail(path, "cannot open for writing");
    for (const auto& [k, v] : entries)
        out << k << " = " << v << '\n';
    if (!out)
        io_fail(path, "write failed");
}

std::map<std::string, std::string> read_report(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::MissingArtifact, path.string() + ": no such file");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto s = trimmed(line);
        if (s.empty() || s.front() == '#')
            continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            io_fail(path, "malformed report line: '" + std::string(s) + "'");
        kv[std::string(trimmed(s.substr(0, eq)))] = std::string(trimmed(s.substr(eq + 1)));
    }
    return kv;
}

void write_manifest(const std::filesystem::path& dir, std::uint64_t config_hash,
                    std::uint64_t seed, std::vector<std::string> files) {
    std::sort(files.begin(), files.end());
    std::ofstream out(dir / "manifest.txt", std::ios::binary);
    if (!out)
        io_fail(dir / "manifest.txt", "cannot open for writing");
    out << "hslab-manifest 1\n";
    out << "tool hslab 0.1.0\n";
    out << "fftw " << fftw_version << "\n";
    out << "config-fnv1a " << hash_hex(config_hash) << "\n";
    out << "seed " << seed << "\n";
    for (const auto& name : files) {
        const auto p = dir / name;
        out << "file " << name << " " << std::filesystem::file_size(p) << " "
            << hash_hex(fnv1a_file(p)) << "\n";
    }
    if (!out)
        io_fail(dir / "manifest.txt", "write failed");
}

} // namespace hslab::io
