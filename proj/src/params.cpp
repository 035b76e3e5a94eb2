#include "hslab/params.hpp"

#include <cmath>

namespace hslab {

void PhysicalParams::validate() const {
    if (!(mu1 + mu2 > 0.0)) fail(ErrorCode::DegenerateParams, "mu1 + mu2 must be positive");
    if (!(b > 0.0)) fail(ErrorCode::DegenerateParams, "plate gap b must be positive");
    if (!(W > 0.0)) fail(ErrorCode::DegenerateParams, "cell width W must be positive");
    if (!(K > 0.0)) fail(ErrorCode::DegenerateParams, "constant K must be positive");
}

double compute_atwood(const PhysicalParams& p) {
    const double denom = p.mu1 + p.mu2;
    if (!(denom > 0.0)) fail(ErrorCode::DegenerateParams, "mu1 + mu2 must be positive");
    return (p.mu2 - p.mu1) / denom;
}

double characteristic_speed(const PhysicalParams& p) {
    const double denom = p.mu1 + p.mu2;
    if (!(denom > 0.0)) fail(ErrorCode::DegenerateParams, "mu1 + mu2 must be positive");
    const double numer = (p.mu2 - p.mu1) * p.U_inf + (p.rho2 - p.rho1) * p.g * p.b * p.b / 12.0;
    return std::abs(numer / denom);
}

void require_nondimensionalizable(const PhysicalParams& p) {
    if (characteristic_speed(p) == 0.0)
        fail(ErrorCode::ZeroSpeed, "characteristic speed U* vanishes");
}

double mean_viscosity(const PhysicalParams& p) { return 0.5 * (p.mu1 + p.mu2); }

double compute_B(const PhysicalParams& p) {
    p.validate();
    require_nondimensionalizable(p);
    const double ustar = characteristic_speed(p);
    return p.a * p.b * p.b / (12.0 * ustar * p.W * p.W * mean_viscosity(p));
}

double time_scale(const PhysicalParams& p) {
    p.validate();
    require_nondimensionalizable(p);
    return p.W / characteristic_speed(p);
}

double matching_constant(const PhysicalParams& p) {
    if (!(p.K > 0.0)) fail(ErrorCode::DegenerateParams, "constant K must be positive");
    return p.ell / p.K;
}

} // namespace hslab
