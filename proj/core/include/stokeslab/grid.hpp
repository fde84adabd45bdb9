#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace stokeslab {

/// Horizontally periodic, vertically bounded slab [0,Lx)x[0,Ly)x[z_min,z_max].
///
/// Horizontal nodes are uniformly spaced samples of the torus; vertical nodes
/// include both endpoints. The discrete horizontal frequencies are
/// 2*pi*(n1/Lx, n2/Ly) with n_i in [-n_i/2, n_i/2), stored in FFT order.
struct SlabGrid {
    int nx = 0;
    int ny = 0;
    int nz = 0;
    double lx = 0.0;
    double ly = 0.0;
    double z_min = 0.0;
    double z_max = 0.0;

    [[nodiscard]] std::size_t nxy() const noexcept {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    }
    [[nodiscard]] std::size_t size() const noexcept { return nxy() * static_cast<std::size_t>(nz); }
    [[nodiscard]] double dz() const noexcept { return (z_max - z_min) / (nz - 1); }
    [[nodiscard]] double z(int k) const noexcept { return z_min + k * dz(); }
    [[nodiscard]] double cell_area() const noexcept { return lx * ly / static_cast<double>(nxy()); }

    /// Signed integer mode number for FFT index m along an axis of n points.
    [[nodiscard]] static int mode(int m, int n) noexcept { return m < n / 2 ? m : m - n; }

    [[nodiscard]] double xi1(int m1) const noexcept { return 2.0 * std::numbers::pi * mode(m1, nx) / lx; }
    [[nodiscard]] double xi2(int m2) const noexcept { return 2.0 * std::numbers::pi * mode(m2, ny) / ly; }
    [[nodiscard]] double modulus(int m1, int m2) const noexcept { return std::hypot(xi1(m1), xi2(m2)); }

    /// Flat index of the frequency (m1, m2); row-major with x1 slowest.
    [[nodiscard]] std::size_t flat(int m1, int m2) const noexcept {
        return static_cast<std::size_t>(m1) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(m2);
    }
    /// Flat index of -xi for the frequency at flat index idx.
    [[nodiscard]] std::size_t conjugate_index(std::size_t idx) const noexcept {
        const int m1 = static_cast<int>(idx / static_cast<std::size_t>(ny));
        const int m2 = static_cast<int>(idx % static_cast<std::size_t>(ny));
        return flat((nx - m1) % nx, (ny - m2) % ny);
    }
    /// The mean (xi = 0) and the unpaired Nyquist rows carry no admissible content.
    [[nodiscard]] bool is_excluded_mode(int m1, int m2) const noexcept {
        return (m1 == 0 && m2 == 0) || m1 == nx / 2 || m2 == ny / 2;
    }

    /// Largest |xi_i| component present on the grid (the Nyquist wavenumber).
    [[nodiscard]] double max_wavenumber_component() const noexcept {
        return std::max(std::numbers::pi * nx / lx, std::numbers::pi * ny / ly);
    }

    /// Grid with the same node counts covering a domain scaled by `factor`.
    [[nodiscard]] SlabGrid scaled(double factor) const noexcept {
        return SlabGrid{nx, ny, nz, lx * factor, ly * factor, z_min * factor, z_max * factor};
    }

    friend bool operator==(const SlabGrid&, const SlabGrid&) = default;
};

/// Validated grid construction.
///
/// Throws ValidationError naming the offending parameter when nx or ny is not
/// a power of two >= 4, nz < 3, a period is non-positive, or z_min >= z_max.
[[nodiscard]] SlabGrid make_grid(int nx, int ny, double lx, double ly, int nz, double z_min, double z_max);

/// Re-validates an already-built grid (used for data read from disk).
void validate(const SlabGrid& grid);

}  // namespace stokeslab
