#include "hslab/vortex_sheet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hslab/parallel.hpp"
#include "hslab/spectral.hpp"

namespace hslab::vortex_sheet {

namespace {

constexpr double kPi = std::numbers::pi;

void check_sources(const VortexSources& src) {
    if (src.points.size() != src.circulations.size())
        fail(ErrorCode::DegenerateParams, "source points and circulations differ in length");
    if (src.kernel == Kernel::PeriodicX && !(src.period > 0.0))
        fail(ErrorCode::DegenerateParams, "x-periodic kernel needs a positive period");
    if (src.y_images > 0 && !(src.y_period > 0.0))
        fail(ErrorCode::DegenerateParams, "image sum needs a positive y period");
    if (!(src.blob_delta >= 0.0))
        fail(ErrorCode::DegenerateParams, "blob delta must be non-negative");
}

// Free-space blob kernel: circulation / (2 pi) * (-dy, dx) / (r^2 + delta^2).
// Returns false when the term is singular and must be skipped (PV rule).
inline bool free_space_term(Vec2 d, double delta2, Vec2& out) {
    const double r2 = d.x * d.x + d.y * d.y + delta2;
    if (r2 == 0.0)
        return false;
    const double f = 1.0 / (2.0 * kPi * r2);
    out = {-d.y * f, d.x * f};
    return true;
}

// Closed form of the x-periodic image sum. With k = 2 pi / L,
//   (u, v) = circulation / (2 L) * (-sinh(k dy), sin(k dx)) / D,
//   D = cosh(k dy) - cos(k dx) + (k delta)^2 / 2,
// which reduces to the free-space blob kernel as |d| -> 0.
inline bool periodic_term(Vec2 d, double k, double delta2, Vec2& out) {
    const double ky = k * d.y;
    const double kx = k * d.x;
    const double denom = std::cosh(ky) - std::cos(kx) + 0.5 * k * k * delta2;
    if (denom == 0.0)
        return false;
    const double f = k / (4.0 * kPi * denom); // 1/(2L) = k/(4 pi)
    out = {-std::sinh(ky) * f, std::sin(kx) * f};
    return true;
}

// Accumulates the velocity that source j induces at target p. Singular
// terms are skipped and reported so callers can apply the PV rule.
inline bool accumulate(Vec2 p, const VortexSources& src, std::size_t j, double delta2, double k,
                       Vec2& vel) {
    const Vec2 d = p - src.points[j];
    Vec2 term{0.0, 0.0};
    bool regular = true;
    if (src.kernel == Kernel::FreeSpace) {
        regular = free_space_term(d, delta2, term);
    } else {
        regular = periodic_term(d, k, delta2, term);
        for (int m = 1; m <= src.y_images; ++m) {
            const double shift = static_cast<double>(m) * src.y_period;
            Vec2 up{0.0, 0.0};
            Vec2 down{0.0, 0.0};
            periodic_term({d.x, d.y - shift}, k, delta2, up);
            periodic_term({d.x, d.y + shift}, k, delta2, down);
            term += up + down;
        }
    }
    if (!regular)
        return false;
    vel += src.circulations[j] * term;
    return true;
}

std::vector<double> curvature_derivative(const InterfaceCurve& c, bool quadratic_fit) {
    const std::vector<double> kappa = curvature(c);
    const std::size_t n = c.size();
    std::vector<double> ds(n);
    for (std::size_t i = 0; i < n; ++i)
        ds[i] = c.segment_length(i);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = (i + 1) % n;
        const std::size_t im = (i + n - 1) % n;
        const double a = ds[im]; // arclength back to marker i-1
        const double b = ds[i];  // arclength forward to marker i+1
        if (quadratic_fit) {
            // Derivative at s = 0 of the parabola through (-a, k-), (0, k0), (b, k+).
            out[i] = kappa[im] * (-b / (a * (a + b))) + kappa[i] * ((b - a) / (a * b)) +
                     kappa[ip] * (a / (b * (a + b)));
        } else {
            out[i] = (kappa[ip] - kappa[im]) / (a + b);
        }
    }
    return out;
}

// Right-hand side of the strength relation evaluated at the current gamma.
std::vector<double> strength_rhs(const SheetState& s, const std::vector<double>* kappa_s) {
    const std::size_t n = s.curve.size();
    const std::vector<Vec2> vel = birkhoff_velocity(s);
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 t = s.curve.tangent(i);
        rhs[i] = 2.0 * s.A * dot(vel[i], t) + s.drive_sign * 2.0 * t.y;
        if (kappa_s)
            rhs[i] += 2.0 * s.B * (*kappa_s)[i];
    }
    return rhs;
}

SheetState state_with_markers(const SheetState& base, std::vector<Vec2> markers) {
    SheetState out = base;
    out.curve = InterfaceCurve(std::move(markers), base.curve.topology(), base.curve.period());
    refresh_circulations(out);
    return out;
}

std::vector<Vec2> stage_velocity(SheetState& stage, const StrengthSolveOptions& solve) {
    solve_sheet_strength(stage, solve);
    std::vector<Vec2> vel = birkhoff_velocity(stage);
    for (const Vec2& u : vel)
        if (!std::isfinite(u.x) || !std::isfinite(u.y))
            fail(ErrorCode::UnstableStep, "non-finite marker velocity");
    return vel;
}

double wrapped(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0)
        r += period;
    return r;
}

} // namespace

std::vector<Vec2> induced_velocity(std::span<const Vec2> targets, const VortexSources& src) {
    check_sources(src);
    const double delta2 = src.blob_delta * src.blob_delta;
    const double k = src.kernel == Kernel::PeriodicX ? 2.0 * kPi / src.period : 0.0;
    std::vector<Vec2> out(targets.size(), Vec2{0.0, 0.0});
    parallel_for(targets.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Vec2 vel{0.0, 0.0};
            for (std::size_t j = 0; j < src.points.size(); ++j)
                accumulate(targets[i], src, j, delta2, k, vel);
            out[i] = vel;
        }
    });
    return out;
}

std::vector<Vec2> induced_velocity_at_sources(const VortexSources& src) {
    check_sources(src);
    const double delta2 = src.blob_delta * src.blob_delta;
    const double k = src.kernel == Kernel::PeriodicX ? 2.0 * kPi / src.period : 0.0;
    const std::size_t n = src.points.size();
    std::vector<Vec2> out(n, Vec2{0.0, 0.0});
    std::vector<char> bad(n, 0);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Vec2 vel{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i)
                    continue; // principal value: the self-term is omitted
                if (!accumulate(src.points[i], src, j, delta2, k, vel))
                    bad[i] = 1;
            }
            out[i] = vel;
        }
    });
    if (std::find(bad.begin(), bad.end(), 1) != bad.end())
        fail(ErrorCode::CoincidentMarkers, "distinct sources coincide and blob delta is zero");
    return out;
}

SheetState make_sheet_state(InterfaceCurve curve, double A, double B, double drive_sign,
                            double blob_delta) {
    if (!(std::abs(A) <= 1.0))
        fail(ErrorCode::DegenerateParams, "Atwood ratio must lie in [-1, 1]");
    if (!(blob_delta >= 0.0))
        fail(ErrorCode::DegenerateParams, "blob delta must be non-negative");
    SheetState s{std::move(curve), {}, {}, 0.0, A, B, drive_sign, blob_delta};
    s.gamma.assign(s.curve.size(), 0.0);
    refresh_circulations(s);
    return s;
}

void refresh_circulations(SheetState& s) {
    const std::size_t n = s.curve.size();
    if (s.gamma.size() != n)
        fail(ErrorCode::DegenerateParams, "gamma length does not match the marker count");
    s.circulations.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        s.circulations[i] = s.gamma[i] * s.curve.arclength_weight(i);
}

VortexSources sources_of(const SheetState& s) {
    VortexSources src;
    src.points = s.curve.markers();
    src.circulations = s.circulations;
    src.blob_delta = s.blob_delta;
    if (s.curve.topology() == Topology::PeriodicX) {
        src.kernel = Kernel::PeriodicX;
        src.period = s.curve.period();
    }
    return src;
}

std::vector<Vec2> birkhoff_velocity(const SheetState& s) {
    return induced_velocity_at_sources(sources_of(s));
}

std::vector<Vec2> birkhoff_velocity(std::span<const Vec2> targets, const SheetState& s) {
    return induced_velocity(targets, sources_of(s));
}

StrengthSolveResult solve_sheet_strength(SheetState& s, const StrengthSolveOptions& opts) {
    if (s.gamma.size() != s.curve.size())
        s.gamma.assign(s.curve.size(), 0.0);
    if (opts.theta && !(*opts.theta > 0.0 && *opts.theta <= 1.0))
        fail(ErrorCode::DegenerateParams, "relaxation factor must lie in (0, 1]");
    if (!(opts.tol > 0.0) || opts.max_iter < 1)
        fail(ErrorCode::DegenerateParams, "solver tolerance and iteration cap must be positive");
    const double theta = opts.theta ? *opts.theta : (s.A == 0.0 ? 1.0 : 0.8);

    // The curvature term does not depend on gamma; computed once.
    std::vector<double> kappa_s;
    if (s.B != 0.0)
        kappa_s = curvature_derivative(s.curve, /*quadratic_fit=*/false);
    const std::vector<double>* ks = s.B != 0.0 ? &kappa_s : nullptr;

    refresh_circulations(s);
    for (int it = 0;; ++it) {
        const std::vector<double> rhs = strength_rhs(s, ks);
        double res = 0.0;
        for (std::size_t i = 0; i < rhs.size(); ++i)
            res = std::max(res, std::abs(rhs[i] - s.gamma[i]));
        if (!std::isfinite(res))
            fail(ErrorCode::UnstableStep, "strength iteration diverged");
        if (res <= opts.tol)
            return {it, res};
        if (it >= opts.max_iter)
            fail(ErrorCode::NoConvergence, "strength iteration exceeded " +
                                               std::to_string(opts.max_iter) +
                                               " sweeps (residual " + std::to_string(res) + ")");
        const double th = it == 0 ? 1.0 : theta; // full first update from the initial guess
        for (std::size_t i = 0; i < rhs.size(); ++i)
            s.gamma[i] = (1.0 - th) * s.gamma[i] + th * rhs[i];
        refresh_circulations(s);
    }
}

SheetState advance_interface(const SheetState& s, double dt, const AdvanceOptions& opts) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        fail(ErrorCode::DegenerateParams, "time step must be positive and finite");
    if (!(opts.redistribute_ratio >= 1.0))
        fail(ErrorCode::DegenerateParams, "redistribution ratio must be at least 1");

    const std::vector<Vec2>& x0 = s.curve.markers();
    const std::size_t n = x0.size();
    SheetState s1 = s;
    const std::vector<Vec2> k1 = stage_velocity(s1, opts.solve);

    std::vector<Vec2> xn(n);
    if (opts.scheme == TimeScheme::RK2) {
        std::vector<Vec2> xs(n);
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = x0[i] + dt * k1[i];
        SheetState s2 = state_with_markers(s1, std::move(xs));
        const std::vector<Vec2> k2 = stage_velocity(s2, opts.solve);
        for (std::size_t i = 0; i < n; ++i)
            xn[i] = x0[i] + 0.5 * dt * (k1[i] + k2[i]);
    } else {
        std::vector<Vec2> xs(n);
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = x0[i] + 0.5 * dt * k1[i];
        SheetState s2 = state_with_markers(s1, std::move(xs));
        const std::vector<Vec2> k2 = stage_velocity(s2, opts.solve);

        xs.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = x0[i] + 0.5 * dt * k2[i];
        SheetState s3 = state_with_markers(s2, std::move(xs));
        const std::vector<Vec2> k3 = stage_velocity(s3, opts.solve);

        xs.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = x0[i] + dt * k3[i];
        SheetState s4 = state_with_markers(s3, std::move(xs));
        const std::vector<Vec2> k4 = stage_velocity(s4, opts.solve);

        for (std::size_t i = 0; i < n; ++i)
            xn[i] = x0[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }

    SheetState out = state_with_markers(s1, std::move(xn));
    out.t = s.t + dt;

    if (opts.check_self_intersection && self_intersects(out.curve))
        fail(ErrorCode::SelfIntersection, "interface self-intersects at t = " +
                                              std::to_string(out.t));

    double ds_min = std::numeric_limits<double>::infinity();
    double ds_max = 0.0;
    for (std::size_t i = 0; i < out.curve.size(); ++i) {
        const double ds = out.curve.segment_length(i);
        ds_min = std::min(ds_min, ds);
        ds_max = std::max(ds_max, ds);
    }
    if (ds_max > opts.redistribute_ratio * ds_min) {
        const double target =
            out.curve.total_arclength() / static_cast<double>(out.curve.size());
        out.curve = redistribute_markers(out.curve, target);
        out.gamma.assign(out.curve.size(), 0.0); // strength is re-solved below
        refresh_circulations(out);
    }
    solve_sheet_strength(out, opts.solve);
    return out;
}

double suggested_dt(const SheetState& s) {
    SheetState tmp = s;
    solve_sheet_strength(tmp);
    const std::vector<Vec2> vel = birkhoff_velocity(tmp);
    double vmax = 0.0;
    for (const Vec2& u : vel)
        vmax = std::max(vmax, norm(u));
    double ds_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.curve.size(); ++i)
        ds_min = std::min(ds_min, s.curve.segment_length(i));
    double dt = vmax == 0.0 ? std::numeric_limits<double>::infinity()
                            : 0.25 * ds_min / vmax;
    // The curvature term feeds kappa_s back into the velocity, which is a
    // third-order stiff contribution for an explicit stepper: the shortest
    // resolvable wave is damped at a rate ~ B / ds^3, so dt must shrink with
    // the cube of the marker spacing for that mode to stay stable.
    if (s.B > 0.0)
        dt = std::min(dt, ds_min * ds_min * ds_min / s.B);
    return dt;
}

std::vector<Vec2> advect_frozen(const VortexSources& src, double dt, TimeScheme scheme) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        fail(ErrorCode::DegenerateParams, "time step must be positive and finite");
    auto velocity = [&](const std::vector<Vec2>& pts) {
        VortexSources moved = src;
        moved.points = pts;
        return induced_velocity_at_sources(moved);
    };
    const std::size_t n = src.points.size();
    std::vector<Vec2> x = src.points;
    const std::vector<Vec2> k1 = velocity(x);
    if (scheme == TimeScheme::RK2) {
        std::vector<Vec2> xs(n);
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = x[i] + dt * k1[i];
        const std::vector<Vec2> k2 = velocity(xs);
        for (std::size_t i = 0; i < n; ++i)
            x[i] += 0.5 * dt * (k1[i] + k2[i]);
    } else {
        std::vector<Vec2> xs(n);
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = x[i] + 0.5 * dt * k1[i];
        const std::vector<Vec2> k2 = velocity(xs);
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = x[i] + 0.5 * dt * k2[i];
        const std::vector<Vec2> k3 = velocity(xs);
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = x[i] + dt * k3[i];
        const std::vector<Vec2> k4 = velocity(xs);
        for (std::size_t i = 0; i < n; ++i)
            x[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return x;
}

CrosscheckReport stream_function_crosscheck(const VortexSources& bare, std::size_t nx,
                                            std::size_t ny, double Lx, double Ly,
                                            const CrosscheckOptions& opts, ScalarField2D* psi_out,
                                            ScalarField2D* ux_out, ScalarField2D* uy_out) {
    if (nx < 16 || ny < 16 || !(Lx > 0.0) || !(Ly > 0.0))
        fail(ErrorCode::DegenerateParams, "cross-check grid must be at least 16x16 with a "
                                          "positive extent");

    VortexSources src = bare;
    src.kernel = Kernel::PeriodicX;
    src.period = Lx;
    src.y_images = opts.y_images;
    src.y_period = Ly;

    CrosscheckReport rep;
    double abs_sum = 0.0;
    for (double g : src.circulations) {
        rep.total_circulation += g;
        abs_sum += std::abs(g);
    }
    rep.mean_subtracted = std::abs(rep.total_circulation) > 1e-12 * std::max(1.0, abs_sum);

    // Deposit circulation as grid vorticity (area-weighted, wrap both ways).
    ScalarField2D omega(nx, ny, Lx, Ly, BoundaryY::Periodic);
    const double dx = omega.dx();
    const double dy = omega.dy();
    const double inv_cell = 1.0 / (dx * dy);
    std::vector<Vec2> wrapped_pts(src.points.size());
    for (std::size_t p = 0; p < src.points.size(); ++p) {
        const double px = wrapped(src.points[p].x, Lx);
        const double py = wrapped(src.points[p].y, Ly);
        wrapped_pts[p] = {px, py};
        const double gx = px / dx;
        const double gy = py / dy;
        const std::size_t i0 = static_cast<std::size_t>(gx) % nx;
        const std::size_t j0 = static_cast<std::size_t>(gy) % ny;
        const std::size_t i1 = (i0 + 1) % nx;
        const std::size_t j1 = (j0 + 1) % ny;
        const double fx = gx - std::floor(gx);
        const double fy = gy - std::floor(gy);
        const double w = src.circulations[p] * inv_cell;
        omega.at(i0, j0) += w * (1.0 - fx) * (1.0 - fy);
        omega.at(i1, j0) += w * fx * (1.0 - fy);
        omega.at(i0, j1) += w * (1.0 - fx) * fy;
        omega.at(i1, j1) += w * fx * fy;
    }

    // psi solves lap psi = -omega; the zero mode is dropped, which is the
    // mean-vorticity subtraction when the total circulation is nonzero.
    PeriodicHelmholtz poisson(nx, ny, Lx, Ly);
    ScalarField2D psi(nx, ny, Lx, Ly, BoundaryY::Periodic);
    poisson.solve(0.0, 1.0, omega, psi);

    ScalarField2D ux(nx, ny, Lx, Ly, BoundaryY::Periodic);
    ScalarField2D uy(nx, ny, Lx, Ly, BoundaryY::Periodic);
    for (std::size_t j = 0; j < ny; ++j) {
        const std::size_t jp = (j + 1) % ny;
        const std::size_t jm = (j + ny - 1) % ny;
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t ip = (i + 1) % nx;
            const std::size_t im = (i + nx - 1) % nx;
            ux.at(i, j) = (psi.at(i, jp) - psi.at(i, jm)) / (2.0 * dy);
            uy.at(i, j) = -(psi.at(ip, j) - psi.at(im, j)) / (2.0 * dx);
        }
    }

    // Probe nodes well away from the sheet, doubly periodic distance.
    const double dmin =
        opts.min_probe_distance > 0.0 ? opts.min_probe_distance : 4.0 * std::max(dx, dy);
    const std::size_t stride = std::max<std::size_t>(1, opts.probe_stride);
    std::vector<Vec2> probes;
    std::vector<Vec2> grid_vel;
    for (std::size_t j = 0; j < ny; j += stride) {
        for (std::size_t i = 0; i < nx; i += stride) {
            const Vec2 q{omega.x(i), omega.y(j)};
            double dist = std::numeric_limits<double>::infinity();
            for (const Vec2& m : wrapped_pts) {
                double ddx = std::abs(q.x - m.x);
                ddx = std::min(ddx, Lx - ddx);
                double ddy = std::abs(q.y - m.y);
                ddy = std::min(ddy, Ly - ddy);
                dist = std::min(dist, std::hypot(ddx, ddy));
            }
            if (dist >= dmin) {
                probes.push_back(q);
                grid_vel.push_back({ux.at(i, j), uy.at(i, j)});
            }
        }
    }
    if (probes.empty())
        fail(ErrorCode::InsufficientData,
             "no grid node is far enough from the markers to serve as a probe");

    // The grid solution has zero mean flow; the direct image sum carries a
    // net horizontal transport of sum(circ_i * (y_i - Ly/2)) / (Lx Ly).
    VortexSources direct = src;
    direct.points = wrapped_pts;
    std::vector<Vec2> ref = induced_velocity(probes, direct);
    double mean_u = 0.0;
    for (std::size_t p = 0; p < wrapped_pts.size(); ++p)
        mean_u += direct.circulations[p] * (wrapped_pts[p].y - 0.5 * Ly);
    mean_u /= Lx * Ly;
    for (Vec2& u : ref)
        u.x -= mean_u;

    rep.probes_used = probes.size();
    for (std::size_t p = 0; p < probes.size(); ++p) {
        rep.max_discrepancy = std::max(rep.max_discrepancy, norm(grid_vel[p] - ref[p]));
        rep.reference_speed = std::max(rep.reference_speed, norm(ref[p]));
    }
    rep.relative = rep.reference_speed > 0.0 ? rep.max_discrepancy / rep.reference_speed : 0.0;

    if (psi_out)
        *psi_out = psi;
    if (ux_out)
        *ux_out = ux;
    if (uy_out)
        *uy_out = uy;
    return rep;
}

CrosscheckReport stream_function_crosscheck(const SheetState& s, std::size_t nx, std::size_t ny,
                                            double Lx, double Ly, const CrosscheckOptions& opts,
                                            ScalarField2D* psi_out, ScalarField2D* ux_out,
                                            ScalarField2D* uy_out) {
    return stream_function_crosscheck(sources_of(s), nx, ny, Lx, Ly, opts, psi_out, ux_out,
                                      uy_out);
}

PressureJumpReport pressure_jump_check(const SheetState& s) {
    if (s.gamma.size() != s.curve.size())
        fail(ErrorCode::DegenerateParams, "gamma length does not match the marker count");
    SheetState tmp = s;
    refresh_circulations(tmp);
    const std::vector<Vec2> vel = birkhoff_velocity(tmp);
    std::vector<double> kappa_s;
    if (s.B != 0.0)
        kappa_s = curvature_derivative(s.curve, /*quadratic_fit=*/true);

    PressureJumpReport rep;
    for (std::size_t i = 0; i < s.curve.size(); ++i) {
        const Vec2 t = s.curve.tangent(i);
        const double term_u = 2.0 * s.A * dot(vel[i], t);
        const double term_d = s.drive_sign * 2.0 * t.y;
        const double term_k = s.B != 0.0 ? 2.0 * s.B * kappa_s[i] : 0.0;
        rep.max_term_velocity = std::max(rep.max_term_velocity, std::abs(term_u));
        rep.max_term_drive = std::max(rep.max_term_drive, std::abs(term_d));
        rep.max_term_curvature = std::max(rep.max_term_curvature, std::abs(term_k));
        rep.max_residual =
            std::max(rep.max_residual, std::abs(s.gamma[i] - (term_u + term_d + term_k)));
    }
    return rep;
}

} // namespace hslab::vortex_sheet
