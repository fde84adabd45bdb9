#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "stokeslab/grid.hpp"

namespace stokeslab {

using cplx = std::complex<double>;

/// Real samples on the slab grid, laid out (component, vertical node, x1, x2).
class PhysicalField {
public:
    PhysicalField() = default;
    PhysicalField(const SlabGrid& grid, int ncomp);

    [[nodiscard]] const SlabGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] int ncomp() const noexcept { return ncomp_; }

    [[nodiscard]] std::span<double> data() noexcept { return data_; }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    /// Horizontal plane of component c at vertical node k.
    [[nodiscard]] std::span<double> plane(int c, int k) noexcept;
    [[nodiscard]] std::span<const double> plane(int c, int k) const noexcept;

    [[nodiscard]] double& at(int c, int k, int i1, int i2) noexcept {
        return data_[offset(c, k) + grid_.flat(i1, i2)];
    }
    [[nodiscard]] double at(int c, int k, int i1, int i2) const noexcept {
        return data_[offset(c, k) + grid_.flat(i1, i2)];
    }

    /// Horizontal sample coordinates.
    [[nodiscard]] double x1(int i1) const noexcept { return grid_.lx * i1 / grid_.nx; }
    [[nodiscard]] double x2(int i2) const noexcept { return grid_.ly * i2 / grid_.ny; }

private:
    [[nodiscard]] std::size_t offset(int c, int k) const noexcept {
        return (static_cast<std::size_t>(c) * static_cast<std::size_t>(grid_.nz) + static_cast<std::size_t>(k)) *
               grid_.nxy();
    }

    SlabGrid grid_{};
    int ncomp_ = 0;
    std::vector<double> data_;
};

/// Horizontal Fourier coefficients per vertical node, laid out
/// (component, vertical node, frequency) with frequencies in FFT order.
///
/// Coefficients are mode amplitudes: a physical field cos(x1) has
/// coefficient 1/2 at n1 = +1 and n1 = -1.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(const SlabGrid& grid, int ncomp);

    [[nodiscard]] const SlabGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] int ncomp() const noexcept { return ncomp_; }

    [[nodiscard]] std::span<cplx> data() noexcept { return data_; }
    [[nodiscard]] std::span<const cplx> data() const noexcept { return data_; }

    [[nodiscard]] std::span<cplx> plane(int c, int k) noexcept;
    [[nodiscard]] std::span<const cplx> plane(int c, int k) const noexcept;

    [[nodiscard]] cplx& at(int c, int k, std::size_t idx) noexcept { return data_[offset(c, k) + idx]; }
    [[nodiscard]] cplx at(int c, int k, std::size_t idx) const noexcept { return data_[offset(c, k) + idx]; }

    /// Single component c as a scalar field (copy).
    [[nodiscard]] SpectralField component(int c) const;
    /// Overwrites component c with the scalar field s.
    void set_component(int c, const SpectralField& s);

    /// Zeroes the mean and the unpaired Nyquist rows at every node.
    void project_homogeneous() noexcept;

    /// this += alpha * other.
    void axpy(double alpha, const SpectralField& other);
    void scale(double alpha) noexcept;

    /// Largest coefficient magnitude (0 for an empty field).
    [[nodiscard]] double max_abs() const noexcept;

private:
    [[nodiscard]] std::size_t offset(int c, int k) const noexcept {
        return (static_cast<std::size_t>(c) * static_cast<std::size_t>(grid_.nz) + static_cast<std::size_t>(k)) *
               grid_.nxy();
    }

    SlabGrid grid_{};
    int ncomp_ = 0;
    std::vector<cplx> data_;
};

/// Throws ShapeError unless a and b share grid and component count.
void require_same_shape(const SpectralField& a, const SpectralField& b, const char* context);
void require_same_grid(const SlabGrid& a, const SlabGrid& b, const char* context);

/// Largest deviation from Hermitian symmetry c(-xi) = conj(c(xi)).
[[nodiscard]] double hermitian_defect(const SpectralField& f) noexcept;

/// Replaces each conjugate pair (c(xi), c(-xi)) by its Hermitian average.
void symmetrize_plane(std::span<cplx> plane, const SlabGrid& grid) noexcept;

/// a - b (same shape).
[[nodiscard]] SpectralField difference(const SpectralField& a, const SpectralField& b);

}  // namespace stokeslab
