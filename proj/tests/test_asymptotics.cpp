#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "hslab/asymptotics.hpp"

using namespace hslab;
using namespace hslab::asymptotics;

namespace {

// Closed-form front: phi = tanh(rho/2) solves d phi/d rho = (1 - phi^2)/2.
double exact_front(double rho) { return std::tanh(0.5 * rho); }

ProfileSolution tanh_profile(double scale, double hw, std::size_t n) {
    // phi = tanh(scale * rho) sampled directly (not an ODE solution).
    ProfileSolution p;
    for (std::size_t i = 0; i <= 2 * n; ++i) {
        const double r = -hw + 2.0 * hw * static_cast<double>(i) / static_cast<double>(2 * n);
        const double c = std::cosh(scale * r);
        p.rho.push_back(r);
        p.phi.push_back(std::tanh(scale * r));
        p.dphi.push_back(scale / (c * c));
    }
    return p;
}

} // namespace

TEST_CASE("profile ODE reproduces the closed-form front") {
    const ProfileSolution p = solve_profile_ode(30.0, 1024);
    REQUIRE(p.rho.size() == 2049);
    double err = 0.0;
    for (std::size_t i = 0; i < p.rho.size(); ++i)
        err = std::max(err, std::abs(p.phi[i] - exact_front(p.rho[i])));
    CHECK(err <= 1e-8);

    // interpolation between samples keeps the same accuracy
    CHECK(std::abs(p.eval(2.0) - std::tanh(1.0)) <= 1e-8);
    for (double r : {-7.3, -0.141, 0.6181, 3.99, 11.05})
        CHECK(std::abs(p.eval(r) - exact_front(r)) <= 1e-8);

    // clamped outside the grid
    CHECK(p.eval(100.0) == p.phi.back());
    CHECK(p.eval(-100.0) == p.phi.front());
}

TEST_CASE("profile is exactly antisymmetric and saturates") {
    const ProfileSolution p = solve_profile_ode(24.0, 512);
    const std::size_t n = p.rho.size();
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(p.phi[i] == -p.phi[n - 1 - i]);
        CHECK(p.rho[i] == -p.rho[n - 1 - i]);
    }
    CHECK(p.phi.front() < -(1.0 - 1e-6));
    CHECK(p.phi.back() > 1.0 - 1e-6);
    for (std::size_t i = 1; i < n; ++i)
        CHECK(p.phi[i] > p.phi[i - 1]); // monotone front
}

TEST_CASE("profile solve rejects bad arguments") {
    CHECK_THROWS_AS(solve_profile_ode(0.0, 256), Error);
    CHECK_THROWS_AS(solve_profile_ode(10.0, 8), Error);
    // tanh(2) = 0.96 has not saturated: the window is too narrow
    try {
        solve_profile_ode(4.0, 256);
        FAIL("expected domain-too-small");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DomainTooSmall);
    }
}

TEST_CASE("surface tension constant of the exact profile is 2/3") {
    const ProfileSolution p = solve_profile_ode(30.0, 2048);
    CHECK(std::abs(surface_tension_integral(p) - 2.0 / 3.0) <= 1e-8);
    // the value is grid-converged well before n = 2048
    const ProfileSolution q = solve_profile_ode(30.0, 512);
    CHECK(std::abs(surface_tension_integral(q) - 2.0 / 3.0) <= 1e-8);
}

TEST_CASE("surface tension integral on constructed profiles") {
    // phi = tanh(rho) has (phi')^2 = sech^4 and integral 4/3
    CHECK(surface_tension_integral(tanh_profile(1.0, 30.0, 2048)) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-10));

    // constant profile: zero
    ProfileSolution flat;
    flat.rho = {-1.0, 0.0, 1.0};
    flat.phi = {0.3, 0.3, 0.3};
    flat.dphi = {0.0, 0.0, 0.0};
    CHECK(surface_tension_integral(flat) == 0.0);

    // translation of the grid leaves the integral unchanged
    ProfileSolution a = tanh_profile(0.5, 25.0, 1024);
    ProfileSolution b = a;
    for (double& r : b.rho)
        r += 3.7;
    CHECK(std::abs(surface_tension_integral(a) - surface_tension_integral(b)) <= 1e-10);
}

TEST_CASE("trapezoid error decreases at second order") {
    // On a truncated window the end-point derivatives of sech^4 do not
    // vanish, so the classic h^2 term dominates and is measurable.
    // Exact antiderivative of sech^4: tanh - tanh^3/3.
    const double hw = 2.0;
    const double t = std::tanh(hw);
    const double exact = 2.0 * (t - t * t * t / 3.0);
    const double e0 = std::abs(surface_tension_integral(tanh_profile(1.0, hw, 64)) - exact);
    const double e1 = std::abs(surface_tension_integral(tanh_profile(1.0, hw, 128)) - exact);
    const double e2 = std::abs(surface_tension_integral(tanh_profile(1.0, hw, 256)) - exact);
    CHECK(e0 / e1 > 3.5);
    CHECK(e0 / e1 < 4.5);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("surface tension integral validates its input") {
    ProfileSolution bad;
    bad.rho = {0.0, 1.0};
    bad.phi = {0.0};
    bad.dphi = {0.0, 0.0};
    CHECK_THROWS_AS(surface_tension_integral(bad), Error);
    ProfileSolution unsorted;
    unsorted.rho = {0.0, -1.0, 1.0};
    unsorted.phi = {0.0, 0.0, 0.0};
    unsorted.dphi = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(surface_tension_integral(unsorted), Error);
}

TEST_CASE("matching-constant regression recovers exact synthetic data") {
    const double c2sq = 0.7;
    std::vector<FluxVelocityPair> runs;
    for (double v : {0.1, 0.25, 0.4, 0.55, 0.7})
        runs.push_back({-c2sq * v, v}); // -flux = c2sq * v exactly
    const MatchingReport rep = verify_matching_constant(runs, c2sq);
    CHECK(rep.samples == 5);
    CHECK(rep.slope == doctest::Approx(c2sq).epsilon(1e-12));
    CHECK(std::abs(rep.intercept) <= 1e-12);
    CHECK(rep.relative_error <= 1e-12);
}

TEST_CASE("matching-constant regression tolerates an offset and mild noise") {
    // a constant measurement bias lands in the intercept, not the slope
    const double c2sq = 1.3;
    std::vector<FluxVelocityPair> runs;
    const double noise[] = {0.004, -0.007, 0.002, 0.006, -0.003, -0.001};
    int i = 0;
    for (double v : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) {
        runs.push_back({-(c2sq * v + 0.05 + noise[i]), v});
        ++i;
    }
    const MatchingReport rep = verify_matching_constant(runs, c2sq);
    CHECK(rep.relative_error < 0.03);
    CHECK(rep.intercept == doctest::Approx(0.05).epsilon(0.25));
}

TEST_CASE("matching-constant regression rejects unidentifiable data") {
    std::vector<FluxVelocityPair> two = {{-0.1, 0.1}, {-0.2, 0.2}};
    CHECK_THROWS_AS(verify_matching_constant(two, 1.0), Error);

    std::vector<FluxVelocityPair> flat = {{-0.1, 0.3}, {-0.11, 0.3}, {-0.09, 0.3}, {-0.1, 0.3}};
    try {
        verify_matching_constant(flat, 1.0);
        FAIL("expected insufficient-data");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientData);
    }

    std::vector<FluxVelocityPair> ok = {{-0.1, 0.1}, {-0.2, 0.2}, {-0.3, 0.3}};
    CHECK_THROWS_AS(verify_matching_constant(ok, 0.0), Error);
}

TEST_CASE("growth oracle approaches the continuum dispersion rate") {
    const double k = 2.0 * std::numbers::pi;
    GrowthOracleOptions opts;
    opts.markers = 512;

    // undriven/driven flat sheet, with and without surface tension; the
    // discrete rate carries an O(1/N) quadrature deficit, about 0.4% at 512
    for (double B : {0.0, 1.0 / 3.0}) {
        for (double drive : {1.0, -1.0}) {
            const double r = linear_growth_oracle(k, 0.0, B, drive, opts);
            const double c = dispersion_rate(k, B, drive);
            CHECK(std::abs(r - c) <= 0.01 * std::abs(c));
        }
    }
}

TEST_CASE("growth oracle is independent of the Atwood ratio at linear order") {
    const double k = 2.0 * std::numbers::pi;
    GrowthOracleOptions opts;
    opts.markers = 256;
    const double r0 = linear_growth_oracle(k, 0.0, 0.0, 1.0, opts);
    const double r5 = linear_growth_oracle(k, 0.5, 0.0, 1.0, opts);
    const double r1 = linear_growth_oracle(k, 1.0, 0.0, 1.0, opts);
    CHECK(std::abs(r5 - r0) <= 1e-6 * std::abs(r0));
    CHECK(std::abs(r1 - r0) <= 1e-6 * std::abs(r0));
}

TEST_CASE("growth oracle sign dichotomy and stabilization threshold") {
    const double k = 2.0 * std::numbers::pi;
    GrowthOracleOptions opts;
    opts.markers = 128;
    // B below the threshold drive/k^2 grows, above decays
    const double Bc = 1.0 / (k * k);
    CHECK(linear_growth_oracle(k, 0.2, 0.2 * Bc, 1.0, opts) > 0.0);
    CHECK(linear_growth_oracle(k, 0.2, 5.0 * Bc, 1.0, opts) < 0.0);
    // reversed orientation decays even without surface tension
    CHECK(linear_growth_oracle(k, 0.2, 0.0, -1.0, opts) < 0.0);
}

TEST_CASE("growth oracle rate increases with k on the unstable side") {
    GrowthOracleOptions opts;
    opts.markers = 256;
    opts.period = 1.0;
    const double base = 2.0 * std::numbers::pi;
    const double r1 = linear_growth_oracle(base, 1.0, 0.0, 1.0, opts);
    const double r2 = linear_growth_oracle(2.0 * base, 1.0, 0.0, 1.0, opts);
    const double r4 = linear_growth_oracle(4.0 * base, 1.0, 0.0, 1.0, opts);
    CHECK(r1 > 0.0);
    CHECK(r2 > r1);
    CHECK(r4 > r2);
}

TEST_CASE("growth oracle validates mode and resolution") {
    CHECK_THROWS_AS(linear_growth_oracle(0.0, 0.0, 0.0, 1.0), Error);
    GrowthOracleOptions opts;
    opts.period = 1.0;
    CHECK_THROWS_AS(linear_growth_oracle(3.0, 0.0, 0.0, 1.0, opts), Error); // not a harmonic
    opts.period = 0.0;
    opts.markers = 16;
    opts.amplitude = -1.0;
    CHECK_THROWS_AS(linear_growth_oracle(2.0 * std::numbers::pi, 0.0, 0.0, 1.0, opts), Error);
}
