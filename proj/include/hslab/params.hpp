#pragma once

#include "hslab/errors.hpp"

namespace hslab {

/// Physical description of the two-fluid Hele-Shaw cell together with the
/// model constants used by the diffuse-interface solver. Fluid 2 displaces
/// fluid 1; the driving direction convention is carried by the sheet state.
///
/// The kinetic coefficient `alpha_kin` (Gibbs-Thomson) and the surface
/// tension coefficient `a` (Laplace-Young) are distinct inputs here even
/// though some writings use one symbol for both.
struct PhysicalParams {
    double mu1 = 1.0;       ///< dynamic viscosity of fluid 1 [Pa s]
    double mu2 = 1.0;       ///< dynamic viscosity of fluid 2 [Pa s]
    double rho1 = 1.0;      ///< density of fluid 1 [kg/m^3]
    double rho2 = 1.0;      ///< density of fluid 2 [kg/m^3]
    double b = 1.0;         ///< plate gap [m]
    double g = 0.0;         ///< gravitational acceleration [m/s^2]
    double a = 0.0;         ///< surface tension coefficient [N/m]
    double U_inf = 1.0;     ///< imposed far-field speed [m/s]
    double W = 1.0;         ///< cell width [m]
    double ell = 1.0;       ///< latent-heat-like constant (model units)
    double K = 1.0;         ///< diffusivity-like constant (model units)
    double alpha_kin = 1.0; ///< kinetic coefficient in the interface condition
    double lambda = 2.0;    ///< pressure coupling in the unscaled field system

    void validate() const;
};

/// Atwood ratio A = (mu2 - mu1) / (mu2 + mu1), in [-1, 1].
double compute_atwood(const PhysicalParams& p);

/// Characteristic speed U* = |((mu2-mu1) U_inf + (rho2-rho1) g b^2 / 12) / (mu2+mu1)|.
/// A return value of zero means the parameter set cannot be nondimensionalized.
double characteristic_speed(const PhysicalParams& p);

/// Throws ZeroSpeed when U* vanishes.
void require_nondimensionalizable(const PhysicalParams& p);

/// Arithmetic mean viscosity (mu1 + mu2) / 2.
double mean_viscosity(const PhysicalParams& p);

/// Surface-tension group B = a b^2 / (12 U* W^2 mu_bar).
double compute_B(const PhysicalParams& p);

/// Time unit W / U* used to convert field-solver time to sheet-solver time.
double time_scale(const PhysicalParams& p);

/// Matching constant c2^2 = ell / K.
double matching_constant(const PhysicalParams& p);

} // namespace hslab
