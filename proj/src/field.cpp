#include "hslab/field.hpp"

#include <algorithm>
#include <cmath>

namespace hslab {

ScalarField2D::ScalarField2D(std::size_t nx, std::size_t ny, double Lx, double Ly,
                             BoundaryY boundary)
    : nx_(nx), ny_(ny), Lx_(Lx), Ly_(Ly), boundary_(boundary), values_(nx * ny, 0.0) {
    if (nx_ < 8 || ny_ < 8) fail(ErrorCode::DegenerateParams, "grid needs nx, ny >= 8");
    if (!(Lx_ > 0.0) || !(Ly_ > 0.0)) fail(ErrorCode::DegenerateParams, "extents must be positive");
}

void ScalarField2D::fill(const std::function<double(double, double)>& f) {
    for (std::size_t j = 0; j < ny_; ++j)
        for (std::size_t i = 0; i < nx_; ++i) at(i, j) = f(x(i), y(j));
}

double ScalarField2D::sample(Vec2 p) const {
    const double hx = dx();
    const double hy = dy();

    double xf = p.x / hx;
    xf -= std::floor(xf / static_cast<double>(nx_)) * static_cast<double>(nx_);
    auto i0 = static_cast<std::size_t>(xf);
    if (i0 >= nx_) i0 = 0;
    const double tx = xf - static_cast<double>(i0);
    const std::size_t i1 = (i0 + 1) % nx_;

    double yf = p.y / hy;
    std::size_t j0, j1;
    double ty;
    if (boundary_ == BoundaryY::Periodic) {
        yf -= std::floor(yf / static_cast<double>(ny_)) * static_cast<double>(ny_);
        j0 = static_cast<std::size_t>(yf);
        if (j0 >= ny_) j0 = 0;
        ty = yf - static_cast<double>(j0);
        j1 = (j0 + 1) % ny_;
    } else {
        yf = std::clamp(yf, 0.0, static_cast<double>(ny_ - 1));
        j0 = std::min(static_cast<std::size_t>(yf), ny_ - 2);
        ty = yf - static_cast<double>(j0);
        j1 = j0 + 1;
    }

    const double v00 = at(i0, j0);
    const double v10 = at(i1, j0);
    const double v01 = at(i0, j1);
    const double v11 = at(i1, j1);
    return (1.0 - tx) * (1.0 - ty) * v00 + tx * (1.0 - ty) * v10 + (1.0 - tx) * ty * v01 +
           tx * ty * v11;
}

double ScalarField2D::laplacian5(std::size_t i, std::size_t j) const {
    const std::size_t ip = (i + 1) % nx_;
    const std::size_t im = (i + nx_ - 1) % nx_;
    std::size_t jp, jm;
    if (boundary_ == BoundaryY::Periodic) {
        jp = (j + 1) % ny_;
        jm = (j + ny_ - 1) % ny_;
    } else {
        if (j == 0 || j == ny_ - 1)
            fail(ErrorCode::DegenerateParams, "laplacian5 needs an interior row");
        jp = j + 1;
        jm = j - 1;
    }
    const double hx2 = dx() * dx();
    const double hy2 = dy() * dy();
    return (at(ip, j) - 2.0 * at(i, j) + at(im, j)) / hx2 +
           (at(i, jp) - 2.0 * at(i, j) + at(i, jm)) / hy2;
}

double ScalarField2D::integral() const {
    double acc = 0.0;
    if (boundary_ == BoundaryY::Periodic) {
        for (double v : values_) acc += v;
        return acc * dx() * dy();
    }
    for (std::size_t j = 0; j < ny_; ++j) {
        const double w = (j == 0 || j == ny_ - 1) ? 0.5 : 1.0;
        for (std::size_t i = 0; i < nx_; ++i) acc += w * at(i, j);
    }
    return acc * dx() * dy();
}

double ScalarField2D::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

} // namespace hslab
