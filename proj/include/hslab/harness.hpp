#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hslab/config.hpp"
#include "hslab/curve.hpp"

namespace hslab::harness {

/// Where a run wrote its outputs and every file it produced (manifest last).
struct RunArtifacts {
    std::filesystem::path directory;
    std::vector<std::string> files;
};

/// Executes one configured job and persists its outputs under
/// config.output.directory: a canonical config echo, interface/trajectory
/// CSVs, field snapshots at the configured cadence, a key-value run report,
/// and a manifest hashing every written file.  Output bytes are fully
/// determined by the config (including the seed); wall-clock data never
/// enters an artifact.
///
/// numerics.dt applies in the clock of the configured method: field time for
/// phase-field runs, sheet time for vortex-sheet runs.  dt = 0 selects the
/// solver's stable step.  numerics.t_end is always field time; sheet runs
/// convert through the W/U* scale.
RunArtifacts run(const RunConfig& cfg);

/// Outcome of the cross-method comparison: one vortex-sheet reference run
/// plus one phase-field run per scheduled eps, interfaces compared at the
/// matched final time by symmetric Hausdorff distance on 512-point
/// resamplings.
struct ComparisonReport {
    std::vector<double> eps_values;
    std::vector<double> hausdorff_distances;
    bool monotone_flag = false; ///< distances non-increasing within 10% slack
    std::vector<double> runtimes_seconds;  ///< wall time of each phase-field run
    double sheet_runtime_seconds = 0.0;    ///< wall time of the reference run
};

/// Runs the comparison and writes its artifacts (comparison.csv, interface
/// CSVs, manifest) under config.output.directory.  Runtimes live only in the
/// returned report.  Fails with MismatchedInitialCondition when a phase-field
/// initial interface sits more than one grid cell from the sheet's.
ComparisonReport compare_methods(const RunConfig& cfg);

/// Asymptotics self-checks: front profile shape, the surface-tension
/// constant, quadrature order under refinement, the matching-constant
/// regression, and dispersion-sign dichotomies from the discrete growth
/// oracle.  Pure computation; `run` persists the matching tables.
struct VerifyOutcome {
    struct Check {
        std::string name;
        bool pass = false;
        double value = 0.0;
        double bound = 0.0;
    };
    std::vector<Check> checks;
    bool all_pass() const;
};

VerifyOutcome verify_asymptotics(const RunConfig& cfg);

/// Marker-chain form of the configured initial interface (shared by both
/// solvers so comparisons start from the same geometry).
InterfaceCurve initial_interface(const RunConfig& cfg);

/// Fails with MismatchedInitialCondition when the two interfaces differ by
/// more than one grid cell (Hausdorff distance on 512-point resamplings).
void require_matched_initial(const InterfaceCurve& a, const InterfaceCurve& b,
                             double cell);

} // namespace hslab::harness
