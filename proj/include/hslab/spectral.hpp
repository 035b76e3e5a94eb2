#pragma once

#include <memory>

#include "hslab/field.hpp"

namespace hslab {

/// FFT-diagonalized solver for (a I - b L) x = rhs on the fully periodic
/// grid, where L is the five-point Laplacian. With a == 0 the solution is
/// the zero-mean one and the rhs mean is discarded.
class PeriodicHelmholtz {
  public:
    PeriodicHelmholtz(std::size_t nx, std::size_t ny, double Lx, double Ly);
    ~PeriodicHelmholtz();
    PeriodicHelmholtz(const PeriodicHelmholtz&) = delete;
    PeriodicHelmholtz& operator=(const PeriodicHelmholtz&) = delete;

    void solve(double a, double b, const ScalarField2D& rhs, ScalarField2D& out) const;

    bool matches(const ScalarField2D& f) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Same operator on a grid periodic in x with pinned value rows in y:
/// FFT along x, Thomas solve along y per mode. The pinned rows of `out`
/// are set to the supplied constants.
class MixedHelmholtz {
  public:
    MixedHelmholtz(std::size_t nx, std::size_t ny, double Lx, double Ly);
    ~MixedHelmholtz();
    MixedHelmholtz(const MixedHelmholtz&) = delete;
    MixedHelmholtz& operator=(const MixedHelmholtz&) = delete;

    void solve(double a, double b, const ScalarField2D& rhs, double bottom, double top,
               ScalarField2D& out) const;

    bool matches(const ScalarField2D& f) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace hslab
