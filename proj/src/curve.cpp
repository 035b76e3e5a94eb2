#include "hslab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hslab {

InterfaceCurve::InterfaceCurve(std::vector<Vec2> markers, Topology topology, double period)
    : markers_(std::move(markers)), topology_(topology), period_(period) {
    if (markers_.size() < 8)
        fail(ErrorCode::DegenerateCurve, "interface needs at least 8 markers");
    if (topology_ != Topology::Closed && !(period_ > 0.0))
        fail(ErrorCode::DegenerateCurve, "periodic interface needs a positive period");
    if (topology_ == Topology::Closed) period_ = 0.0;
    rebuild_arclength();
}

void InterfaceCurve::rebuild_arclength() {
    const std::size_t n = markers_.size();
    cumlen_.resize(n);
    cumlen_[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double len = norm(markers_[i] - markers_[i - 1]);
        if (!(len > 0.0))
            fail(ErrorCode::DegenerateCurve, "consecutive markers coincide");
        cumlen_[i] = cumlen_[i - 1] + len;
    }
    Vec2 wrap_end = markers_[0];
    if (topology_ == Topology::PeriodicX) wrap_end.x += period_;
    if (topology_ == Topology::PeriodicY) wrap_end.y += period_;
    const double closing = norm(wrap_end - markers_[n - 1]);
    if (!(closing > 0.0))
        fail(ErrorCode::DegenerateCurve, "closing segment has zero length");
    total_ = cumlen_[n - 1] + closing;
}

Vec2 InterfaceCurve::neighbor(std::size_t i, int k) const {
    const long n = static_cast<long>(markers_.size());
    long j = static_cast<long>(i) + k;
    long shift = 0;
    while (j < 0) { j += n; --shift; }
    while (j >= n) { j -= n; ++shift; }
    Vec2 p = markers_[static_cast<std::size_t>(j)];
    if (topology_ == Topology::PeriodicX) p.x += static_cast<double>(shift) * period_;
    if (topology_ == Topology::PeriodicY) p.y += static_cast<double>(shift) * period_;
    return p;
}

double InterfaceCurve::segment_length(std::size_t i) const {
    return norm(neighbor(i, 1) - markers_[i]);
}

double InterfaceCurve::arclength_weight(std::size_t i) const {
    const Vec2 prev = neighbor(i, -1);
    const Vec2 next = neighbor(i, 1);
    return 0.5 * (norm(markers_[i] - prev) + norm(next - markers_[i]));
}

Vec2 InterfaceCurve::tangent(std::size_t i) const {
    const Vec2 chord = neighbor(i, 1) - neighbor(i, -1);
    const double len = norm(chord);
    if (!(len > 0.0)) fail(ErrorCode::DegenerateCurve, "zero centered chord");
    return chord / len;
}

Vec2 InterfaceCurve::normal(std::size_t i) const { return perp(tangent(i)); }

Vec2 InterfaceCurve::point_at_arclength(double s) const {
    const std::size_t n = markers_.size();
    s = std::fmod(s, total_);
    if (s < 0.0) s += total_;
    // segment containing s: cumlen_[i] <= s < cumlen_[i+1] (or the closing one)
    auto it = std::upper_bound(cumlen_.begin(), cumlen_.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - cumlen_.begin()) - 1;
    const Vec2 a = markers_[i];
    const Vec2 b = neighbor(i, 1);
    const double seg = norm(b - a);
    const double frac = (s - cumlen_[i]) / seg;
    return a + frac * (b - a);
}

double InterfaceCurve::enclosed_area() const {
    if (topology_ != Topology::Closed)
        fail(ErrorCode::DegenerateCurve, "enclosed area requires a closed chain");
    double acc = 0.0;
    const std::size_t n = markers_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = markers_[i];
        const Vec2 b = markers_[(i + 1) % n];
        acc += cross(a, b);
    }
    return 0.5 * acc;
}

void InterfaceCurve::reverse() {
    std::reverse(markers_.begin(), markers_.end());
    rebuild_arclength();
}

std::vector<double> curvature(const InterfaceCurve& c) {
    const std::size_t n = c.size();
    std::vector<double> kappa(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = c.neighbor(i, -1);
        const Vec2 b = c.markers()[i];
        const Vec2 d = c.neighbor(i, 1);
        const Vec2 e1 = b - a;
        const Vec2 e2 = d - b;
        const double l1 = norm(e1);
        const double l2 = norm(e2);
        const double lc = norm(d - a);
        if (!(l1 > 0.0) || !(l2 > 0.0) || !(lc > 0.0))
            fail(ErrorCode::DegenerateCurve, "three consecutive markers coincide");
        kappa[i] = 2.0 * cross(e1, e2) / (l1 * l2 * lc);
    }
    return kappa;
}

InterfaceCurve redistribute_markers(const InterfaceCurve& c, double target_spacing) {
    const double total = c.total_arclength();
    if (!(target_spacing > 0.0) || !(target_spacing < total / 8.0))
        fail(ErrorCode::DegenerateCurve, "target spacing must lie in (0, total/8)");
    if (self_intersects(c))
        fail(ErrorCode::DegenerateCurve, "refusing to redistribute a self-intersecting chain");
    const auto n_new = static_cast<std::size_t>(std::llround(total / target_spacing));
    return resample_uniform(c, std::max<std::size_t>(n_new, 8));
}

InterfaceCurve resample_uniform(const InterfaceCurve& c, std::size_t n) {
    if (n < 8) fail(ErrorCode::DegenerateCurve, "resampling needs at least 8 markers");
    const double spacing = c.total_arclength() / static_cast<double>(n);
    std::vector<Vec2> fresh(n);
    for (std::size_t k = 0; k < n; ++k)
        fresh[k] = c.point_at_arclength(static_cast<double>(k) * spacing);
    return InterfaceCurve(std::move(fresh), c.topology(), c.period());
}

namespace {

bool segments_cross(Vec2 a, Vec2 b, Vec2 p, Vec2 q) {
    const double d1 = cross(b - a, p - a);
    const double d2 = cross(b - a, q - a);
    const double d3 = cross(q - p, a - p);
    const double d4 = cross(q - p, b - p);
    return ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0));
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b, Vec2* closest) {
    const Vec2 ab = b - a;
    const double denom = norm2(ab);
    double t = denom > 0.0 ? dot(p - a, ab) / denom : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Vec2 proj = a + t * ab;
    if (closest) *closest = proj;
    return norm(p - proj);
}

} // namespace

bool self_intersects(const InterfaceCurve& c) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = c.markers()[i];
        const Vec2 b = c.neighbor(i, 1);
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue; // shares the wrap endpoint
            const Vec2 p = c.markers()[j];
            const Vec2 q = c.neighbor(j, 1);
            if (segments_cross(a, b, p, q)) return true;
        }
    }
    return false;
}

namespace {

double min_distance_single_image(const InterfaceCurve& c, Vec2 p, Vec2* best_point) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 candidate;
        const double d =
            point_segment_distance(p, c.markers()[i], c.neighbor(i, 1), &candidate);
        if (d < best) {
            best = d;
            if (best_point) *best_point = candidate;
        }
    }
    return best;
}

double min_distance(const InterfaceCurve& c, Vec2 p, Vec2* best_point) {
    if (c.topology() == Topology::Closed) return min_distance_single_image(c, p, best_point);
    double best = std::numeric_limits<double>::infinity();
    const bool in_x = c.topology() == Topology::PeriodicX;
    for (int img = -1; img <= 1; ++img) {
        Vec2 shifted = p;
        (in_x ? shifted.x : shifted.y) += static_cast<double>(img) * c.period();
        Vec2 candidate;
        const double d = min_distance_single_image(c, shifted, &candidate);
        if (d < best) {
            best = d;
            if (best_point) {
                (in_x ? candidate.x : candidate.y) -= static_cast<double>(img) * c.period();
                *best_point = candidate;
            }
        }
    }
    return best;
}

} // namespace

double distance_to_curve(const InterfaceCurve& c, Vec2 p) { return min_distance(c, p, nullptr); }

Vec2 closest_point_on_curve(const InterfaceCurve& c, Vec2 p) {
    Vec2 best{};
    min_distance(c, p, &best);
    return best;
}

double hausdorff_distance(const InterfaceCurve& a, const InterfaceCurve& b) {
    double d = 0.0;
    for (const Vec2& p : a.markers()) d = std::max(d, distance_to_curve(b, p));
    for (const Vec2& p : b.markers()) d = std::max(d, distance_to_curve(a, p));
    return d;
}

InterfaceCurve make_circle(Vec2 center, double radius, std::size_t n, bool counterclockwise) {
    std::vector<Vec2> pts(n);
    const double sign = counterclockwise ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = sign * 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n);
        pts[i] = center + Vec2{radius * std::cos(theta), radius * std::sin(theta)};
    }
    return InterfaceCurve(std::move(pts), Topology::Closed);
}

InterfaceCurve make_periodic_graph(double period, std::size_t n,
                                   const std::function<double(double)>& height, double x0) {
    std::vector<Vec2> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x0 + period * static_cast<double>(i) / static_cast<double>(n);
        pts[i] = {x, height(x)};
    }
    return InterfaceCurve(std::move(pts), Topology::PeriodicX, period);
}

} // namespace hslab
