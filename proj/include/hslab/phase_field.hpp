#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "hslab/curve.hpp"
#include "hslab/field.hpp"
#include "hslab/params.hpp"

namespace hslab::phase_field {

/// Diffuse-interface state: pressure-analog u and order parameter phi on a
/// shared grid, advanced as the coupled pair
///
///   eps u_t + (c2sq/2) phi_t = Lap u
///   alpha eps^2 phi_t = eps^2 Lap phi + (phi - phi^3)/2 + g u
///
/// with g the u-coupling coefficient (2 eps unless overridden). States are
/// immutable values: stepping returns a new state.
struct PhaseFieldState {
    ScalarField2D u;
    ScalarField2D phi;
    double t = 0.0;
    double eps = 0.05;
    double c2sq = 1.0;
};

/// Validates layouts and parameters (eps > 0, c2sq >= 0, matching grids,
/// constant pinned rows when the boundary is FixedValue).
PhaseFieldState make_phase_field_state(ScalarField2D u, ScalarField2D phi, double eps,
                                       double c2sq);

struct StepOptions {
    /// Coefficient of u in the phi equation. Unset selects the canonical
    /// 2*eps; the lambda writing of the system maps to lambda*alpha*eps^2.
    std::optional<double> u_coupling;
};

/// u-coupling equivalent to the "+ lambda u" writing of the phi equation.
double coupling_from_lambda(double lambda, double alpha, double eps);

/// Largest step the semi-implicit scheme accepts: the Laplacians are
/// implicit, so the bound comes from the explicit reaction term, which
/// relaxes at rate 1/(alpha eps^2), throttled by the u feedback for c2sq > 1.
double stable_dt(const PhaseFieldState& s, const PhysicalParams& p);

/// Reusable stepper holding the factored Helmholtz solves for one grid
/// layout. Cheap to construct, cheaper to reuse.
class PhaseFieldStepper {
  public:
    explicit PhaseFieldStepper(const ScalarField2D& layout);
    ~PhaseFieldStepper();
    PhaseFieldStepper(const PhaseFieldStepper&) = delete;
    PhaseFieldStepper& operator=(const PhaseFieldStepper&) = delete;

    bool matches(const ScalarField2D& f) const;

    PhaseFieldState step(const PhaseFieldState& s, double dt, const PhysicalParams& p,
                         const StepOptions& opts = {}) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One semi-implicit step: reaction and coupling explicit, diffusion
/// implicit. Fails with UnstableStep when max|phi| exceeds 2 afterwards.
/// Convenience wrapper over PhaseFieldStepper with a per-thread cache.
PhaseFieldState step_phase_field(const PhaseFieldState& s, double dt, const PhysicalParams& p,
                                 const StepOptions& opts = {});

/// Integral of eps*u + (c2sq/2)*phi; constant in time on fully periodic
/// grids (the pair sums to a divergence form).
double conserved_quantity(const PhaseFieldState& s);

/// Zero-contour extraction of phi via cell-edge linear interpolation.
/// Chains are stitched across the periodic seams; winding determines the
/// topology (Closed, PeriodicX, or PeriodicY). Closed chains are oriented
/// with phi > 0 on the left; periodic chains run toward +x (or +y).
struct InterfaceExtraction {
    std::vector<InterfaceCurve> curves; ///< all components, longest first
    std::size_t discarded = 0; ///< chains too short or ending on a pinned row
};

/// Every zero-contour component. Fails with NoInterface when phi is
/// single-signed (or every chain was discarded); chains that wind both
/// directions fail with AmbiguousTopology.
InterfaceExtraction extract_all_interfaces(const ScalarField2D& phi);

/// The longest component only; extra components are dropped silently here,
/// so callers that care about multiplicity use extract_all_interfaces.
InterfaceCurve extract_interface(const ScalarField2D& phi);

/// Interface relations measured from a pair of consecutive states.
/// Curvature is reported in the convention of the limit model: the
/// divergence of the unit normal pointing toward phi > 0 (positive when
/// the phi > 0 phase is on the concave side).
struct SharpInterfaceReport {
    double gibbs_thomson_residual = 0.0; ///< max |u_G - sigma(-alpha v - kappa)/4|
    double flux_jump_residual = 0.0;     ///< max |[du/dn] + c2sq v|
    double harmonicity_residual = 0.0;   ///< max |Lap u| outside the 6 eps collar
    std::vector<double> normal_velocity; ///< v per marker, toward phi > 0
    std::vector<double> curvature;       ///< kappa per marker, limit-model sign
    double d_off = 0.0;                  ///< sampling offset actually used
};

struct MeasureOptions {
    std::optional<double> d_off; ///< gradient sampling offset; default 4*eps
};

/// Measures v from marker displacement between prev and s (5-marker
/// smoothing), one-sided u gradients at d_off and 2*d_off along the normal,
/// and the off-interface Laplacian of u.
SharpInterfaceReport measure_sharp_interface(const PhaseFieldState& s, const PhysicalParams& p,
                                             const PhaseFieldState& prev,
                                             const MeasureOptions& opts = {});

/// Least-squares offset fit of the phi transect at one marker against the
/// equilibrium front shape tanh(rho/2), rho measured along the normal in
/// units of eps.
struct ProfileFitReport {
    double offset = 0.0;      ///< fitted front shift in rho units
    double linf_misfit = 0.0; ///< max |phi - tanh((rho - offset)/2)|
    std::size_t samples = 0;
};

ProfileFitReport measure_profile(const PhaseFieldState& s, const InterfaceCurve& c,
                                 std::size_t marker_index);

/// phi = tanh(d/(2 eps)) with d the signed distance to a circle, positive
/// inside when positive_inside is set.
void fill_tanh_disk(ScalarField2D& phi, Vec2 center, double radius, double eps,
                    bool positive_inside = true);

/// phi = tanh((y - y0 - amp sin(2 pi mode x / Lx)) / (2 eps)): a graph-type
/// front with phi > 0 above.
void fill_tanh_graph(ScalarField2D& phi, double y0, double amp, int mode, double eps);

} // namespace hslab::phase_field
