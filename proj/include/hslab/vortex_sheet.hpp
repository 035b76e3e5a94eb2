#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hslab/curve.hpp"
#include "hslab/field.hpp"
#include "hslab/vec2.hpp"

namespace hslab::vortex_sheet {

enum class Kernel { FreeSpace, PeriodicX };

/// Point-vortex source set for the induced-velocity sums.
/// With kernel == PeriodicX the closed cotangent form of the x-periodic sum
/// is used; y_images > 0 additionally sums that kernel over vertical images
/// spaced y_period apart (the doubly periodic reference used by the grid
/// cross-check).
struct VortexSources {
    std::vector<Vec2> points;
    std::vector<double> circulations;
    Kernel kernel = Kernel::FreeSpace;
    double period = 0.0;
    double blob_delta = 0.0;
    int y_images = 0;
    double y_period = 0.0;
};

/// Desingularized induced velocity at arbitrary targets. Terms whose
/// distance to the target vanishes are dropped (principal-value rule).
std::vector<Vec2> induced_velocity(std::span<const Vec2> targets, const VortexSources& src);

/// Induced velocity at the source points themselves with self-term
/// exclusion by index; distinct coincident sources raise coincident-markers
/// when blob_delta == 0.
std::vector<Vec2> induced_velocity_at_sources(const VortexSources& src);

/// Sharp-interface state: marker chain plus sheet strength.
struct SheetState {
    InterfaceCurve curve;
    std::vector<double> gamma;        ///< nondimensional strength per marker
    std::vector<double> circulations; ///< gamma_i times the local arclength weight
    double t = 0.0;
    double A = 0.0;          ///< Atwood ratio
    double B = 0.0;          ///< surface-tension group
    double drive_sign = 1.0; ///< +1 makes flat-interface modes grow (0 = undriven)
    double blob_delta = 0.0;
};

SheetState make_sheet_state(InterfaceCurve curve, double A, double B, double drive_sign = 1.0,
                            double blob_delta = 0.0);

/// Rebuilds circulations from gamma and the current arclength weights.
void refresh_circulations(SheetState& s);

VortexSources sources_of(const SheetState& s);

/// Birkhoff principal-value velocity at the markers.
std::vector<Vec2> birkhoff_velocity(const SheetState& s);

/// Birkhoff velocity at arbitrary targets induced by the sheet.
std::vector<Vec2> birkhoff_velocity(std::span<const Vec2> targets, const SheetState& s);

struct StrengthSolveOptions {
    /// Relaxation factor for iterations after the first; the first update
    /// always takes the full step. Unset picks 1 for A == 0, 0.8 otherwise.
    std::optional<double> theta;
    double tol = 1e-10;
    int max_iter = 200;
};

struct StrengthSolveResult {
    int iterations = 0;
    double residual = 0.0;
};

/// Relaxed Picard iteration for the strength relation
///   gamma = 2 A (U . s_hat) + drive_sign 2 (j_hat . s_hat) + 2 B d(kappa)/ds.
StrengthSolveResult solve_sheet_strength(SheetState& s, const StrengthSolveOptions& opts = {});

enum class TimeScheme { RK2, RK4 };

struct AdvanceOptions {
    TimeScheme scheme = TimeScheme::RK2;
    double redistribute_ratio = 2.0; ///< resample when max/min spacing exceeds this
    bool check_self_intersection = true;
    StrengthSolveOptions solve;
};

/// One explicit Runge-Kutta step of dx_i/dt = U(x_i); the strength is
/// re-solved at every stage and on the returned state.
SheetState advance_interface(const SheetState& s, double dt, const AdvanceOptions& opts = {});

/// CFL-style step suggestion: max |U| dt <= 0.25 min spacing.
double suggested_dt(const SheetState& s);

/// Moves bare point vortices with frozen circulations (diagnostic helper).
std::vector<Vec2> advect_frozen(const VortexSources& src, double dt, TimeScheme scheme);

struct CrosscheckReport {
    double max_discrepancy = 0.0;    ///< max |grid - direct| over probes
    double reference_speed = 0.0;    ///< max direct speed over probes
    double relative = 0.0;           ///< max_discrepancy / reference_speed
    double total_circulation = 0.0;
    bool mean_subtracted = false;    ///< nonzero total circulation was removed
    std::size_t probes_used = 0;
};

struct CrosscheckOptions {
    double min_probe_distance = 0.0; ///< 0 picks 4 grid cells
    std::size_t probe_stride = 4;    ///< probe every n-th grid node
    int y_images = 8;                ///< image count of the direct reference sum
};

/// Deposits the circulations on an nx-by-ny periodic grid, solves the
/// Poisson problem for the stream function, differentiates, and compares
/// against the direct Birkhoff sums away from the markers. The direct
/// reference uses the doubly periodic image sum matching the grid, whatever
/// kernel the sources carry.
CrosscheckReport stream_function_crosscheck(const VortexSources& src, std::size_t nx,
                                            std::size_t ny, double Lx, double Ly,
                                            const CrosscheckOptions& opts = {},
                                            ScalarField2D* psi_out = nullptr,
                                            ScalarField2D* ux_out = nullptr,
                                            ScalarField2D* uy_out = nullptr);

CrosscheckReport stream_function_crosscheck(const SheetState& s, std::size_t nx, std::size_t ny,
                                            double Lx, double Ly,
                                            const CrosscheckOptions& opts = {},
                                            ScalarField2D* psi_out = nullptr,
                                            ScalarField2D* ux_out = nullptr,
                                            ScalarField2D* uy_out = nullptr);

struct PressureJumpReport {
    double max_residual = 0.0;
    double max_term_velocity = 0.0;
    double max_term_drive = 0.0;
    double max_term_curvature = 0.0;
};

/// Reconstructs each term of the strength relation independently (the
/// curvature derivative via a quadratic arclength fit) and reports how well
/// the stored gamma satisfies it.
PressureJumpReport pressure_jump_check(const SheetState& s);

} // namespace hslab::vortex_sheet
