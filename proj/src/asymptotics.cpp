#include "hslab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hslab/vortex_sheet.hpp"

namespace hslab::asymptotics {

namespace {

// Right-hand side of the profile equation in first-integral form.
inline double profile_rhs(double phi) { return 0.5 * (1.0 - phi * phi); }

double rk4_step(double y, double h) {
    const double k1 = profile_rhs(y);
    const double k2 = profile_rhs(y + 0.5 * h * k1);
    const double k3 = profile_rhs(y + 0.5 * h * k2);
    const double k4 = profile_rhs(y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_profile(const ProfileSolution& p) {
    const std::size_t n = p.rho.size();
    if (n < 2 || p.phi.size() != n || p.dphi.size() != n)
        fail(ErrorCode::DegenerateParams, "profile needs matching rho/phi/dphi samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(p.rho[i] > p.rho[i - 1]))
            fail(ErrorCode::DegenerateParams, "profile grid must be strictly increasing");
}

} // namespace

double ProfileSolution::eval(double r) const {
    check_profile(*this);
    if (r <= rho.front())
        return phi.front();
    if (r >= rho.back())
        return phi.back();
    const auto it = std::upper_bound(rho.begin(), rho.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - rho.begin()) - 1;
    const double h = rho[i + 1] - rho[i];
    const double t = (r - rho[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * phi[i] + (t3 - 2.0 * t2 + t) * h * dphi[i] +
           (-2.0 * t3 + 3.0 * t2) * phi[i + 1] + (t3 - t2) * h * dphi[i + 1];
}

ProfileSolution solve_profile_ode(double half_width, std::size_t n) {
    if (!(half_width > 0.0) || n < 16)
        fail(ErrorCode::DegenerateParams, "profile solve needs half_width > 0 and n >= 16");

    const double h = half_width / static_cast<double>(n);
    constexpr int kSubsteps = 4; // keeps the RK4 tail error well below 1e-10
    std::vector<double> forward(n + 1);
    forward[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double y = forward[i];
        for (int s = 0; s < kSubsteps; ++s)
            y = rk4_step(y, h / kSubsteps);
        forward[i + 1] = y;
    }
    if (std::abs(forward[n]) < 1.0 - 1e-3)
        fail(ErrorCode::DomainTooSmall, "front has not saturated by rho = " +
                                            std::to_string(half_width) +
                                            "; widen the profile domain");

    // The equation is odd under (rho, phi) -> (-rho, -phi); the mirrored
    // half inherits that symmetry bit for bit.
    ProfileSolution p;
    p.rho.resize(2 * n + 1);
    p.phi.resize(2 * n + 1);
    p.dphi.resize(2 * n + 1);
    for (std::size_t i = 0; i <= 2 * n; ++i) {
        const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(n);
        const double phi = k >= 0 ? forward[static_cast<std::size_t>(k)]
                                  : -forward[static_cast<std::size_t>(-k)];
        p.rho[i] = static_cast<double>(k) * h;
        p.phi[i] = phi;
        p.dphi[i] = profile_rhs(phi);
    }
    return p;
}

double surface_tension_integral(const ProfileSolution& p) {
    check_profile(p);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < p.rho.size(); ++i) {
        const double f0 = p.dphi[i] * p.dphi[i];
        const double f1 = p.dphi[i + 1] * p.dphi[i + 1];
        sum += 0.5 * (f0 + f1) * (p.rho[i + 1] - p.rho[i]);
    }
    return sum;
}

MatchingReport verify_matching_constant(std::span<const FluxVelocityPair> runs, double expected,
                                        double v_spread_floor) {
    if (!(expected > 0.0))
        fail(ErrorCode::DegenerateParams, "expected matching constant must be positive");
    if (runs.size() < 3)
        fail(ErrorCode::InsufficientData,
             "matching-constant fit needs at least three measurements, got " +
                 std::to_string(runs.size()));

    double mean_v = 0.0;
    double mean_f = 0.0;
    for (const FluxVelocityPair& r : runs) {
        mean_v += r.v;
        mean_f += -r.flux_jump;
    }
    const double inv_n = 1.0 / static_cast<double>(runs.size());
    mean_v *= inv_n;
    mean_f *= inv_n;

    double var_v = 0.0;
    double cov = 0.0;
    for (const FluxVelocityPair& r : runs) {
        const double dv = r.v - mean_v;
        var_v += dv * dv;
        cov += dv * (-r.flux_jump - mean_f);
    }
    const double spread = std::sqrt(var_v * inv_n);
    if (spread <= v_spread_floor * std::max(1.0, std::abs(mean_v)))
        fail(ErrorCode::InsufficientData,
             "velocity spread is below the noise floor; the slope is not identifiable");

    MatchingReport rep;
    rep.samples = runs.size();
    rep.slope = cov / var_v;
    rep.intercept = mean_f - rep.slope * mean_v;
    rep.expected = expected;
    rep.relative_error = std::abs(rep.slope - expected) / expected;
    return rep;
}

double linear_growth_oracle(double k, double A, double B, double drive_sign,
                            const GrowthOracleOptions& opts) {
    if (!(k > 0.0))
        fail(ErrorCode::DegenerateParams, "growth oracle needs a positive wavenumber");
    if (!(opts.amplitude > 0.0))
        fail(ErrorCode::DegenerateParams, "perturbation amplitude must be positive");
    const double L = opts.period > 0.0 ? opts.period : 2.0 * std::numbers::pi / k;
    const double harmonics = k * L / (2.0 * std::numbers::pi);
    const double m = std::round(harmonics);
    if (std::abs(harmonics - m) > 1e-9 * std::max(1.0, harmonics) || m < 1.0)
        fail(ErrorCode::DegenerateParams, "wavenumber must be a harmonic of the period");
    if (opts.markers < 16 || m > static_cast<double>(opts.markers) / 8.0)
        fail(ErrorCode::DomainTooSmall, "mode is under-resolved by the marker count");

    const auto mode_velocity = [&](double amp) {
        InterfaceCurve curve = make_periodic_graph(
            L, opts.markers, [&](double x) { return amp * std::sin(k * x); });
        vortex_sheet::SheetState s =
            vortex_sheet::make_sheet_state(std::move(curve), A, B, drive_sign, opts.blob_delta);
        vortex_sheet::solve_sheet_strength(s);
        const std::vector<Vec2> vel = vortex_sheet::birkhoff_velocity(s);
        // Project the vertical marker velocity back onto the mode.
        double proj = 0.0;
        for (std::size_t i = 0; i < vel.size(); ++i) {
            const double x = L * static_cast<double>(i) / static_cast<double>(opts.markers);
            proj += vel[i].y * std::sin(k * x);
        }
        return proj * 2.0 / static_cast<double>(opts.markers);
    };

    const double up = mode_velocity(opts.amplitude);
    const double down = mode_velocity(-opts.amplitude);
    return (up - down) / (2.0 * opts.amplitude);
}

double dispersion_rate(double k, double B, double drive_sign) {
    if (!(k > 0.0))
        fail(ErrorCode::DegenerateParams, "dispersion rate needs a positive wavenumber");
    return k * (drive_sign - B * k * k);
}

} // namespace hslab::asymptotics
