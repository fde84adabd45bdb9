#include "stokeslab/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stokeslab/error.hpp"

namespace stokeslab {

namespace {

void check_ncomp(int ncomp) {
    if (ncomp < 1) {
        throw ShapeError("field component count must be positive (got " + std::to_string(ncomp) + ")");
    }
}

}  // namespace

PhysicalField::PhysicalField(const SlabGrid& grid, int ncomp)
    : grid_(grid), ncomp_(ncomp), data_((check_ncomp(ncomp), grid.size() * static_cast<std::size_t>(ncomp)), 0.0) {}

std::span<double> PhysicalField::plane(int c, int k) noexcept { return {data_.data() + offset(c, k), grid_.nxy()}; }

std::span<const double> PhysicalField::plane(int c, int k) const noexcept {
    return {data_.data() + offset(c, k), grid_.nxy()};
}

SpectralField::SpectralField(const SlabGrid& grid, int ncomp)
    : grid_(grid), ncomp_(ncomp), data_((check_ncomp(ncomp), grid.size() * static_cast<std::size_t>(ncomp))) {}

std::span<cplx> SpectralField::plane(int c, int k) noexcept { return {data_.data() + offset(c, k), grid_.nxy()}; }

std::span<const cplx> SpectralField::plane(int c, int k) const noexcept {
    return {data_.data() + offset(c, k), grid_.nxy()};
}

SpectralField SpectralField::component(int c) const {
    if (c < 0 || c >= ncomp_) {
        throw ShapeError("component index " + std::to_string(c) + " out of range");
    }
    SpectralField out(grid_, 1);
    const auto block = grid_.size();
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(block * static_cast<std::size_t>(c)), block,
                out.data_.begin());
    return out;
}

void SpectralField::set_component(int c, const SpectralField& s) {
    if (c < 0 || c >= ncomp_ || s.ncomp() != 1) {
        throw ShapeError("set_component: bad component index or non-scalar source");
    }
    require_same_grid(grid_, s.grid(), "set_component");
    std::copy(s.data_.begin(), s.data_.end(),
              data_.begin() + static_cast<std::ptrdiff_t>(grid_.size() * static_cast<std::size_t>(c)));
}

void SpectralField::project_homogeneous() noexcept {
    const int nx = grid_.nx;
    const int ny = grid_.ny;
    for (int c = 0; c < ncomp_; ++c) {
        for (int k = 0; k < grid_.nz; ++k) {
            auto p = plane(c, k);
            p[0] = 0.0;
            for (int m2 = 0; m2 < ny; ++m2) {
                p[grid_.flat(nx / 2, m2)] = 0.0;
            }
            for (int m1 = 0; m1 < nx; ++m1) {
                p[grid_.flat(m1, ny / 2)] = 0.0;
            }
        }
    }
}

void SpectralField::axpy(double alpha, const SpectralField& other) {
    require_same_shape(*this, other, "axpy");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += alpha * other.data_[i];
    }
}

void SpectralField::scale(double alpha) noexcept {
    for (auto& v : data_) {
        v *= alpha;
    }
}

double SpectralField::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

void require_same_grid(const SlabGrid& a, const SlabGrid& b, const char* context) {
    if (!(a == b)) {
        throw ShapeError(std::string(context) + ": grid mismatch");
    }
}

void require_same_shape(const SpectralField& a, const SpectralField& b, const char* context) {
    require_same_grid(a.grid(), b.grid(), context);
    if (a.ncomp() != b.ncomp()) {
        throw ShapeError(std::string(context) + ": component count mismatch (" + std::to_string(a.ncomp()) +
                         " vs " + std::to_string(b.ncomp()) + ")");
    }
}

double hermitian_defect(const SpectralField& f) noexcept {
    const auto& g = f.grid();
    double worst = 0.0;
    for (int c = 0; c < f.ncomp(); ++c) {
        for (int k = 0; k < g.nz; ++k) {
            auto p = f.plane(c, k);
            for (std::size_t idx = 0; idx < g.nxy(); ++idx) {
                worst = std::max(worst, std::abs(p[idx] - std::conj(p[g.conjugate_index(idx)])));
            }
        }
    }
    return worst;
}

void symmetrize_plane(std::span<cplx> p, const SlabGrid& g) noexcept {
    for (std::size_t i = 0; i < p.size(); ++i) {
        const std::size_t j = g.conjugate_index(i);
        if (j < i) {
            continue;
        }
        if (j == i) {
            p[i] = p[i].real();
            continue;
        }
        const cplx avg = 0.5 * (p[i] + std::conj(p[j]));
        p[i] = avg;
        p[j] = std::conj(avg);
    }
}

SpectralField difference(const SpectralField& a, const SpectralField& b) {
    SpectralField out = a;
    out.axpy(-1.0, b);
    return out;
}

}  // namespace stokeslab
