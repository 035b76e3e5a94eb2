#include "hslab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <vector>

namespace hslab {

namespace {

double dxx_eigenvalue(std::size_t mode, std::size_t n, double h) {
    const double s = std::sin(M_PI * static_cast<double>(mode) / static_cast<double>(n));
    return -4.0 / (h * h) * s * s;
}

// fftw_execute is thread-safe, plan creation and destruction are not
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

struct PeriodicHelmholtz::Impl {
    std::size_t nx, ny, nxh;
    double Lx, Ly;
    double* real;
    fftw_complex* cplx;
    fftw_plan fwd;
    fftw_plan bwd;
    std::vector<double> lam; // five-point Laplacian eigenvalues, [ny][nxh]

    Impl(std::size_t nx_, std::size_t ny_, double Lx_, double Ly_)
        : nx(nx_), ny(ny_), nxh(nx_ / 2 + 1), Lx(Lx_), Ly(Ly_) {
        real = fftw_alloc_real(nx * ny);
        cplx = fftw_alloc_complex(nxh * ny);
        {
            std::lock_guard<std::mutex> guard(planner_mutex());
            fwd = fftw_plan_dft_r2c_2d(static_cast<int>(ny), static_cast<int>(nx), real, cplx,
                                       FFTW_ESTIMATE);
            bwd = fftw_plan_dft_c2r_2d(static_cast<int>(ny), static_cast<int>(nx), cplx, real,
                                       FFTW_ESTIMATE);
        }
        const double dx = Lx / static_cast<double>(nx);
        const double dy = Ly / static_cast<double>(ny);
        lam.resize(ny * nxh);
        for (std::size_t l = 0; l < ny; ++l)
            for (std::size_t m = 0; m < nxh; ++m)
                lam[l * nxh + m] = dxx_eigenvalue(m, nx, dx) + dxx_eigenvalue(l, ny, dy);
    }

    ~Impl() {
        std::lock_guard<std::mutex> guard(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(cplx);
    }
};

PeriodicHelmholtz::PeriodicHelmholtz(std::size_t nx, std::size_t ny, double Lx, double Ly)
    : impl_(std::make_unique<Impl>(nx, ny, Lx, Ly)) {}

PeriodicHelmholtz::~PeriodicHelmholtz() = default;

bool PeriodicHelmholtz::matches(const ScalarField2D& f) const {
    return f.nx() == impl_->nx && f.ny() == impl_->ny && f.Lx() == impl_->Lx &&
           f.Ly() == impl_->Ly && f.boundary() == BoundaryY::Periodic;
}

void PeriodicHelmholtz::solve(double a, double b, const ScalarField2D& rhs,
                              ScalarField2D& out) const {
    if (!matches(rhs) || !matches(out))
        fail(ErrorCode::DegenerateParams, "solver layout mismatch");
    Impl& s = *impl_;
    std::memcpy(s.real, rhs.values().data(), sizeof(double) * s.nx * s.ny);
    fftw_execute(s.fwd);
    const double scale = 1.0 / static_cast<double>(s.nx * s.ny);
    for (std::size_t l = 0; l < s.ny; ++l) {
        for (std::size_t m = 0; m < s.nxh; ++m) {
            const std::size_t idx = l * s.nxh + m;
            const double denom = a - b * s.lam[idx];
            double factor;
            if (l == 0 && m == 0)
                factor = (a == 0.0) ? 0.0 : scale / a;
            else
                factor = scale / denom;
            s.cplx[idx][0] *= factor;
            s.cplx[idx][1] *= factor;
        }
    }
    fftw_execute(s.bwd);
    std::memcpy(out.values().data(), s.real, sizeof(double) * s.nx * s.ny);
}

struct MixedHelmholtz::Impl {
    std::size_t nx, ny, nxh;
    double Lx, Ly;
    double* real;
    fftw_complex* cplx;
    fftw_plan fwd;
    fftw_plan bwd;
    std::vector<double> lamx;

    Impl(std::size_t nx_, std::size_t ny_, double Lx_, double Ly_)
        : nx(nx_), ny(ny_), nxh(nx_ / 2 + 1), Lx(Lx_), Ly(Ly_) {
        real = fftw_alloc_real(nx * ny);
        cplx = fftw_alloc_complex(nxh * ny);
        const int n = static_cast<int>(nx);
        {
            std::lock_guard<std::mutex> guard(planner_mutex());
            fwd = fftw_plan_many_dft_r2c(1, &n, static_cast<int>(ny), real, nullptr, 1,
                                         static_cast<int>(nx), cplx, nullptr, 1,
                                         static_cast<int>(nxh), FFTW_ESTIMATE);
            bwd = fftw_plan_many_dft_c2r(1, &n, static_cast<int>(ny), cplx, nullptr, 1,
                                         static_cast<int>(nxh), real, nullptr, 1,
                                         static_cast<int>(nx), FFTW_ESTIMATE);
        }
        const double dx = Lx / static_cast<double>(nx);
        lamx.resize(nxh);
        for (std::size_t m = 0; m < nxh; ++m) lamx[m] = dxx_eigenvalue(m, nx, dx);
    }

    ~Impl() {
        std::lock_guard<std::mutex> guard(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(cplx);
    }
};

MixedHelmholtz::MixedHelmholtz(std::size_t nx, std::size_t ny, double Lx, double Ly)
    : impl_(std::make_unique<Impl>(nx, ny, Lx, Ly)) {}

MixedHelmholtz::~MixedHelmholtz() = default;

bool MixedHelmholtz::matches(const ScalarField2D& f) const {
    return f.nx() == impl_->nx && f.ny() == impl_->ny && f.Lx() == impl_->Lx &&
           f.Ly() == impl_->Ly && f.boundary() == BoundaryY::FixedValue;
}

void MixedHelmholtz::solve(double a, double b, const ScalarField2D& rhs, double bottom,
                           double top, ScalarField2D& out) const {
    if (!matches(rhs) || !matches(out))
        fail(ErrorCode::DegenerateParams, "solver layout mismatch");
    Impl& s = *impl_;
    std::memcpy(s.real, rhs.values().data(), sizeof(double) * s.nx * s.ny);
    fftw_execute(s.fwd);

    const double dy = rhs.dy();
    const double invdy2 = 1.0 / (dy * dy);
    const std::size_t inner = s.ny - 2;
    std::vector<double> diag(inner), cprime(inner);
    std::vector<double> rre(inner), rim(inner);

    for (std::size_t m = 0; m < s.nxh; ++m) {
        // pinned rows transform to a spike at mode zero
        const double bot_re = (m == 0) ? bottom * static_cast<double>(s.nx) : 0.0;
        const double top_re = (m == 0) ? top * static_cast<double>(s.nx) : 0.0;

        const double d = a - b * s.lamx[m] + 2.0 * b * invdy2;
        const double off = -b * invdy2;
        for (std::size_t r = 0; r < inner; ++r) {
            const std::size_t j = r + 1;
            diag[r] = d;
            rre[r] = s.cplx[j * s.nxh + m][0];
            rim[r] = s.cplx[j * s.nxh + m][1];
        }
        rre[0] -= off * bot_re;
        rre[inner - 1] -= off * top_re;

        // Thomas sweep (constant off-diagonals)
        cprime[0] = off / diag[0];
        rre[0] /= diag[0];
        rim[0] /= diag[0];
        for (std::size_t r = 1; r < inner; ++r) {
            const double denom = diag[r] - off * cprime[r - 1];
            cprime[r] = off / denom;
            rre[r] = (rre[r] - off * rre[r - 1]) / denom;
            rim[r] = (rim[r] - off * rim[r - 1]) / denom;
        }
        for (std::size_t r = inner - 1; r-- > 0;) {
            rre[r] -= cprime[r] * rre[r + 1];
            rim[r] -= cprime[r] * rim[r + 1];
        }

        for (std::size_t r = 0; r < inner; ++r) {
            const std::size_t j = r + 1;
            s.cplx[j * s.nxh + m][0] = rre[r];
            s.cplx[j * s.nxh + m][1] = rim[r];
        }
        s.cplx[0 * s.nxh + m][0] = bot_re;
        s.cplx[0 * s.nxh + m][1] = 0.0;
        s.cplx[(s.ny - 1) * s.nxh + m][0] = top_re;
        s.cplx[(s.ny - 1) * s.nxh + m][1] = 0.0;
    }

    fftw_execute(s.bwd);
    const double scale = 1.0 / static_cast<double>(s.nx);
    for (std::size_t k = 0; k < s.nx * s.ny; ++k) out.values()[k] = s.real[k] * scale;
}

} // namespace hslab
