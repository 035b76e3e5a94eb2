#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hslab/params.hpp"

namespace hslab::harness {

enum class Method { PhaseField, VortexSheet, Compare, VerifyAsymptotics };

const char* to_string(Method m);
Method method_from_string(const std::string& s); ///< ConfigInvalid on unknown names

struct NumericsConfig {
    std::size_t nx = 256;  ///< field grid
    std::size_t ny = 256;
    std::size_t markers = 128; ///< sheet marker count
    double Lx = 1.0;
    double Ly = 1.0;
    double dt = 0.0;    ///< 0 selects the solver's own stable step
    double t_end = 0.004;
    double eps = 0.05;  ///< interface width for single phase-field runs
    std::vector<double> eps_schedule{0.08, 0.04, 0.02}; ///< compare sweep
    double picard_tol = 1e-10;
    std::uint64_t seed = 0;
    double drive = 0.0; ///< sheet driving orientation: -1, 0, or +1
    std::string initial = "bump"; ///< bump | flat | disk | noise
    double amplitude = 0.03;
    double y0 = 0.5;
    int mode = 1;
    double radius = 0.25;
};

struct OutputConfig {
    std::string directory = "out";
    std::size_t snapshot_every = 0; ///< 0 writes initial and final only
    bool write_snapshots = true;
    bool write_csv = true;
};

struct RunConfig {
    int schema = 1;
    Method method = Method::PhaseField;
    PhysicalParams physical;
    NumericsConfig numerics;
    OutputConfig output;
};

/// Parses the flat key-value config document ('key = value' lines grouped
/// under [physical], [numerics], [output]; '#' comments). Unknown sections
/// or keys and unparseable values fail with ConfigInvalid naming the field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical serialization: fixed key order, round-trip-exact numbers.
/// parse_config(serialize_config(c)) reproduces c; the run manifest hashes
/// this form.
std::string serialize_config(const RunConfig& cfg);

/// Structural checks (positive tolerances, strictly decreasing eps
/// schedule, known enum values, nondimensionalizable physicals where the
/// sheet solver is involved). ConfigInvalid names the offending field.
void validate(const RunConfig& cfg);

} // namespace hslab::harness
