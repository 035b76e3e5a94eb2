#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hslab/errors.hpp"
#include "hslab/vec2.hpp"

namespace hslab {

enum class BoundaryY {
    Periodic,
    FixedValue, ///< rows j = 0 and j = ny-1 carry pinned values
};

/// Uniform grid sample of a scalar on [0,Lx) x [0,Ly), periodic in x.
/// Values are row-major: index(i, j) = j*nx + i with i along x.
/// With periodic y the nodes are y_j = j*Ly/ny; with fixed-value y they are
/// y_j = j*Ly/(ny-1) so that the pinned rows sit on the domain edges.
class ScalarField2D {
  public:
    ScalarField2D(std::size_t nx, std::size_t ny, double Lx, double Ly,
                  BoundaryY boundary = BoundaryY::Periodic);

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    double Lx() const { return Lx_; }
    double Ly() const { return Ly_; }
    BoundaryY boundary() const { return boundary_; }

    double dx() const { return Lx_ / static_cast<double>(nx_); }
    double dy() const {
        return boundary_ == BoundaryY::Periodic ? Ly_ / static_cast<double>(ny_)
                                                : Ly_ / static_cast<double>(ny_ - 1);
    }
    double x(std::size_t i) const { return dx() * static_cast<double>(i); }
    double y(std::size_t j) const { return dy() * static_cast<double>(j); }

    double& at(std::size_t i, std::size_t j) { return values_[j * nx_ + i]; }
    double at(std::size_t i, std::size_t j) const { return values_[j * nx_ + i]; }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    void fill(const std::function<double(double, double)>& f);

    /// Bilinear interpolation; x wraps, y wraps or clamps per boundary.
    double sample(Vec2 p) const;

    /// Five-point Laplacian at an interior node (any node when fully periodic).
    double laplacian5(std::size_t i, std::size_t j) const;

    /// Grid sum times the cell area (the natural integral on periodic grids;
    /// trapezoidal weighting of the pinned rows otherwise).
    double integral() const;

    double max_abs() const;

    bool same_layout(const ScalarField2D& o) const {
        return nx_ == o.nx_ && ny_ == o.ny_ && Lx_ == o.Lx_ && Ly_ == o.Ly_ &&
               boundary_ == o.boundary_;
    }

  private:
    std::size_t nx_;
    std::size_t ny_;
    double Lx_;
    double Ly_;
    BoundaryY boundary_;
    std::vector<double> values_;
};

} // namespace hslab
