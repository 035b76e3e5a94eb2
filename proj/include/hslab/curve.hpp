#pragma once

#include <functional>
#include <vector>

#include "hslab/errors.hpp"
#include "hslab/vec2.hpp"

namespace hslab {

enum class Topology {
    Closed,    ///< loop; the last marker connects back to the first
    PeriodicX, ///< graph-like chain; the last marker connects to first + (period, 0)
    PeriodicY, ///< graph-like chain; the last marker connects to first + (0, period)
};

/// Ordered marker chain with arclength metadata. Marker order defines the
/// traversal direction; the left normal is the tangent rotated by +90 degrees.
class InterfaceCurve {
  public:
    InterfaceCurve(std::vector<Vec2> markers, Topology topology, double period = 0.0);

    const std::vector<Vec2>& markers() const { return markers_; }
    Topology topology() const { return topology_; }
    double period() const { return period_; }
    std::size_t size() const { return markers_.size(); }

    /// Arclength from marker 0 to marker i along the chain; s(0) == 0.
    const std::vector<double>& cumulative_arclength() const { return cumlen_; }
    /// Full chain length including the closing segment.
    double total_arclength() const { return total_; }

    /// Marker i+k with wraparound; the periodic image shift is applied.
    Vec2 neighbor(std::size_t i, int k) const;

    /// Chord length of segment i -> i+1 (wraparound included).
    double segment_length(std::size_t i) const;

    /// Local arclength weight (half the two adjacent chords).
    double arclength_weight(std::size_t i) const;

    /// Unit tangent at marker i from the centered chord.
    Vec2 tangent(std::size_t i) const;

    /// Left normal (tangent rotated by +90 degrees).
    Vec2 normal(std::size_t i) const;

    /// Position on the interpolated polygon at arclength s in [0, total).
    Vec2 point_at_arclength(double s) const;

    /// Shoelace area of a closed chain (positive for counterclockwise traversal).
    double enclosed_area() const;

    void reverse();

  private:
    std::vector<Vec2> markers_;
    Topology topology_;
    double period_;
    std::vector<double> cumlen_;
    double total_ = 0.0;

    void rebuild_arclength();
};

/// Signed curvature per marker from the circumscribed circle of each marker
/// triple; positive for a counterclockwise circle.
std::vector<double> curvature(const InterfaceCurve& c);

/// Resamples the chain to near-uniform spacing on the interpolated polygon.
/// Topology and the starting marker phase are preserved.
InterfaceCurve redistribute_markers(const InterfaceCurve& c, double target_spacing);

/// Resample to exactly n markers, uniform in arclength, starting at marker 0.
InterfaceCurve resample_uniform(const InterfaceCurve& c, std::size_t n);

/// Best-effort segment pair intersection test.
bool self_intersects(const InterfaceCurve& c);

/// Distance from p to the interpolated polygon. For x-periodic chains the
/// minimum over the -period/0/+period images of p is taken.
double distance_to_curve(const InterfaceCurve& c, Vec2 p);

/// Closest point of the interpolated polygon to p (same image convention).
Vec2 closest_point_on_curve(const InterfaceCurve& c, Vec2 p);

/// Symmetric Hausdorff distance between two marker chains.
double hausdorff_distance(const InterfaceCurve& a, const InterfaceCurve& b);

InterfaceCurve make_circle(Vec2 center, double radius, std::size_t n, bool counterclockwise = true);

/// x-periodic graph curve y = h(x) sampled at n points over one period.
InterfaceCurve make_periodic_graph(double period, std::size_t n,
                                   const std::function<double(double)>& height,
                                   double x0 = 0.0);

} // namespace hslab
