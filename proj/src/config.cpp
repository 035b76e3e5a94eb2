#include "hslab/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "hslab/errors.hpp"
#include "hslab/io.hpp"

namespace hslab::harness {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
    fail(ErrorCode::ConfigInvalid, field + ": " + what);
}

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double to_double(const std::string& field, std::string_view v) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        bad(field, "not a number: '" + std::string(v) + "'");
    return out;
}

std::uint64_t to_u64(const std::string& field, std::string_view v) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        bad(field, "not a non-negative integer: '" + std::string(v) + "'");
    return out;
}

int to_int(const std::string& field, std::string_view v) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        bad(field, "not an integer: '" + std::string(v) + "'");
    return out;
}

bool to_bool(const std::string& field, std::string_view v) {
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    bad(field, "expected true/false: '" + std::string(v) + "'");
}

std::vector<double> to_list(const std::string& field, std::string_view v) {
    std::vector<double> out;
    std::istringstream ss{std::string(v)};
    std::string tok;
    while (ss >> tok)
        out.push_back(to_double(field, tok));
    if (out.empty())
        bad(field, "expected at least one value");
    return out;
}

void apply(RunConfig& cfg, const std::string& section, const std::string& key,
           std::string_view value) {
    const std::string field = section.empty() ? key : section + "." + key;
    if (section.empty()) {
        if (key == "schema")
            cfg.schema = to_int(field, value);
        else if (key == "method")
            cfg.method = method_from_string(std::string(value));
        else
            bad(field, "unknown key");
        return;
    }
    if (section == "physical") {
        PhysicalParams& p = cfg.physical;
        if (key == "mu1") p.mu1 = to_double(field, value);
        else if (key == "mu2") p.mu2 = to_double(field, value);
        else if (key == "rho1") p.rho1 = to_double(field, value);
        else if (key == "rho2") p.rho2 = to_double(field, value);
        else if (key == "b") p.b = to_double(field, value);
        else if (key == "g") p.g = to_double(field, value);
        else if (key == "a") p.a = to_double(field, value);
        else if (key == "U_inf") p.U_inf = to_double(field, value);
        else if (key == "W") p.W = to_double(field, value);
        else if (key == "ell") p.ell = to_double(field, value);
        else if (key == "K") p.K = to_double(field, value);
        else if (key == "alpha_kin") p.alpha_kin = to_double(field, value);
        else if (key == "lambda") p.lambda = to_double(field, value);
        else bad(field, "unknown key");
        return;
    }
    if (section == "numerics") {
        NumericsConfig& n = cfg.numerics;
        if (key == "nx") n.nx = to_u64(field, value);
        else if (key == "ny") n.ny = to_u64(field, value);
        else if (key == "markers") n.markers = to_u64(field, value);
        else if (key == "Lx") n.Lx = to_double(field, value);
        else if (key == "Ly") n.Ly = to_double(field, value);
        else if (key == "dt") n.dt = to_double(field, value);
        else if (key == "t_end") n.t_end = to_double(field, value);
        else if (key == "eps") n.eps = to_double(field, value);
        else if (key == "eps_schedule") n.eps_schedule = to_list(field, value);
        else if (key == "picard_tol") n.picard_tol = to_double(field, value);
        else if (key == "seed") n.seed = to_u64(field, value);
        else if (key == "drive") n.drive = to_double(field, value);
        else if (key == "initial") n.initial = std::string(value);
        else if (key == "amplitude") n.amplitude = to_double(field, value);
        else if (key == "y0") n.y0 = to_double(field, value);
        else if (key == "mode") n.mode = to_int(field, value);
        else if (key == "radius") n.radius = to_double(field, value);
        else bad(field, "unknown key");
        return;
    }
    if (section == "output") {
        OutputConfig& o = cfg.output;
        if (key == "directory") o.directory = std::string(value);
        else if (key == "snapshot_every") o.snapshot_every = to_u64(field, value);
        else if (key == "write_snapshots") o.write_snapshots = to_bool(field, value);
        else if (key == "write_csv") o.write_csv = to_bool(field, value);
        else bad(field, "unknown key");
        return;
    }
    bad(section, "unknown section");
}

} // namespace

const char* to_string(Method m) {
    switch (m) {
    case Method::PhaseField: return "phase-field";
    case Method::VortexSheet: return "vortex-sheet";
    case Method::Compare: return "compare";
    case Method::VerifyAsymptotics: return "verify-asymptotics";
    }
    return "?";
}

Method method_from_string(const std::string& s) {
    if (s == "phase-field") return Method::PhaseField;
    if (s == "vortex-sheet") return Method::VortexSheet;
    if (s == "compare") return Method::Compare;
    if (s == "verify-asymptotics") return Method::VerifyAsymptotics;
    bad("method", "unknown method '" + s + "'");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto s = trimmed(line);
        if (s.empty() || s.front() == '#')
            continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                bad("line " + std::to_string(lineno), "unterminated section header");
            section = std::string(trimmed(s.substr(1, s.size() - 2)));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            bad("line " + std::to_string(lineno), "expected 'key = value'");
        const std::string key{trimmed(s.substr(0, eq))};
        apply(cfg, section, key, trimmed(s.substr(eq + 1)));
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::ConfigInvalid, path.string() + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    using io::format_double;
    std::ostringstream out;
    out << "schema = " << cfg.schema << "\n";
    out << "method = " << to_string(cfg.method) << "\n";
    out << "\n[physical]\n";
    const PhysicalParams& p = cfg.physical;
    out << "mu1 = " << format_double(p.mu1) << "\n";
    out << "mu2 = " << format_double(p.mu2) << "\n";
    out << "rho1 = " << format_double(p.rho1) << "\n";
    out << "rho2 = " << format_double(p.rho2) << "\n";
    out << "b = " << format_double(p.b) << "\n";
    out << "g = " << format_double(p.g) << "\n";
    out << "a = " << format_double(p.a) << "\n";
    out << "U_inf = " << format_double(p.U_inf) << "\n";
    out << "W = " << format_double(p.W) << "\n";
    out << "ell = " << format_double(p.ell) << "\n";
    out << "K = " << format_double(p.K) << "\n";
    out << "alpha_kin = " << format_double(p.alpha_kin) << "\n";
    out << "lambda = " << format_double(p.lambda) << "\n";
    out << "\n[numerics]\n";
    const NumericsConfig& n = cfg.numerics;
    out << "nx = " << n.nx << "\n";
    out << "ny = " << n.ny << "\n";
    out << "markers = " << n.markers << "\n";
    out << "Lx = " << format_double(n.Lx) << "\n";
    out << "Ly = " << format_double(n.Ly) << "\n";
    out << "dt = " << format_double(n.dt) << "\n";
    out << "t_end = " << format_double(n.t_end) << "\n";
    out << "eps = " << format_double(n.eps) << "\n";
    out << "eps_schedule =";
    for (double e : n.eps_schedule)
        out << " " << format_double(e);
    out << "\n";
    out << "picard_tol = " << format_double(n.picard_tol) << "\n";
    out << "seed = " << n.seed << "\n";
    out << "drive = " << format_double(n.drive) << "\n";
    out << "initial = " << n.initial << "\n";
    out << "amplitude = " << format_double(n.amplitude) << "\n";
    out << "y0 = " << format_double(n.y0) << "\n";
    out << "mode = " << n.mode << "\n";
    out << "radius = " << format_double(n.radius) << "\n";
    out << "\n[output]\n";
    const OutputConfig& o = cfg.output;
    out << "directory = " << o.directory << "\n";
    out << "snapshot_every = " << o.snapshot_every << "\n";
    out << "write_snapshots = " << (o.write_snapshots ? "true" : "false") << "\n";
    out << "write_csv = " << (o.write_csv ? "true" : "false") << "\n";
    return out.str();
}

void validate(const RunConfig& cfg) {
    if (cfg.schema != 1)
        bad("schema", "unsupported schema version " + std::to_string(cfg.schema));
    try {
        cfg.physical.validate();
    } catch (const Error& e) {
        bad("physical", e.what());
    }

    const NumericsConfig& n = cfg.numerics;
    if (n.nx < 8 || n.ny < 8)
        bad("numerics.nx/ny", "grid must be at least 8 x 8");
    if (n.markers < 8)
        bad("numerics.markers", "need at least 8 markers");
    if (!(n.Lx > 0.0) || !(n.Ly > 0.0))
        bad("numerics.Lx/Ly", "domain lengths must be positive");
    if (!(n.dt >= 0.0))
        bad("numerics.dt", "dt must be >= 0 (0 selects the stable step)");
    if (!(n.t_end > 0.0))
        bad("numerics.t_end", "t_end must be positive");
    if (!(n.eps > 0.0))
        bad("numerics.eps", "eps must be positive");
    if (!(n.picard_tol > 0.0))
        bad("numerics.picard_tol", "tolerance must be positive");
    for (std::size_t i = 0; i < n.eps_schedule.size(); ++i) {
        if (!(n.eps_schedule[i] > 0.0))
            bad("numerics.eps_schedule", "all entries must be positive");
        if (i > 0 && !(n.eps_schedule[i] < n.eps_schedule[i - 1]))
            bad("numerics.eps_schedule", "entries must be strictly decreasing");
    }
    if (n.drive != 0.0 && n.drive != 1.0 && n.drive != -1.0)
        bad("numerics.drive", "drive must be -1, 0, or +1");
    if (n.initial != "bump" && n.initial != "flat" && n.initial != "disk" &&
        n.initial != "noise")
        bad("numerics.initial", "unknown initial condition '" + n.initial + "'");
    if (!(n.amplitude >= 0.0))
        bad("numerics.amplitude", "amplitude must be non-negative");
    if (n.mode < 1)
        bad("numerics.mode", "mode must be a positive harmonic index");
    if (!(n.radius > 0.0))
        bad("numerics.radius", "radius must be positive");

    if (cfg.output.directory.empty())
        bad("output.directory", "must not be empty");

    if (cfg.method == Method::Compare && cfg.numerics.eps_schedule.size() < 3)
        bad("numerics.eps_schedule", "compare needs at least 3 eps values");
    if (cfg.method == Method::Compare || cfg.method == Method::VortexSheet) {
        try {
            require_nondimensionalizable(cfg.physical);
        } catch (const Error& e) {
            bad("physical", std::string("sheet solver needs a characteristic speed: ") +
                                e.what());
        }
    }
}

} // namespace hslab::harness
