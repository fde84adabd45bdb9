#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "stokeslab/field.hpp"

namespace stokeslab {

using Rng = std::mt19937_64;

/// Independent complex normal coefficients with Hermitian pairing; the mean
/// and the Nyquist rows are zero.
[[nodiscard]] std::vector<cplx> random_hermitian_plane(const SlabGrid& grid, Rng& rng);

/// Field whose every component is plane(xi) * profile(z_k) (plane per component).
[[nodiscard]] SpectralField separable_field(const SlabGrid& grid, std::span<const std::vector<cplx>> planes,
                                            std::span<const double> profile);

/// Coefficients of the real field amplitude * cos(xi.x) * profile(z) for
/// the signed mode (n1, n2), placed at the given component.
void add_cosine_mode(SpectralField& f, int c, int n1, int n2, double amplitude, std::span<const double> profile);

/// Nodal profiles.
[[nodiscard]] std::vector<double> gaussian_profile(const SlabGrid& grid, double width, double center = 0.0);
[[nodiscard]] std::vector<double> constant_profile(const SlabGrid& grid, double value = 1.0);
/// exp(-(z-c)^2/(2W^2)) cos(zeta (z - c) + phase).
[[nodiscard]] std::vector<double> modulated_profile(const SlabGrid& grid, double width, double zeta, double phase,
                                                    double center = 0.0);
/// Smooth compactly supported bump exp(1 - 1/(1 - ((z-c)/R)^2)) on |z - c| < R.
[[nodiscard]] std::vector<double> compact_bump_profile(const SlabGrid& grid, double radius, double center = 0.0);
/// Nodal indicator of |z - c| <= R.
[[nodiscard]] std::vector<double> indicator_profile(const SlabGrid& grid, double radius, double center = 0.0);

/// Random smooth field: sum of three separable terms with Gaussian
/// envelopes of width `width` (shifted and modulated), each with an
/// independent Hermitian random plane. Restricted to the dealiased band when
/// `band_limited`.
[[nodiscard]] SpectralField random_smooth_field(const SlabGrid& grid, int ncomp, Rng& rng, double width,
                                                bool band_limited = true);

/// Random field with independent coefficients at every node (no vertical
/// smoothness), restricted to the dealiased band when `band_limited`.
[[nodiscard]] SpectralField random_nodewise_field(const SlabGrid& grid, int ncomp, Rng& rng,
                                                  bool band_limited = true);

/// Separable field with random Hermitian planes restricted to |n_i| <=
/// max_mode, times a common vertical profile.
[[nodiscard]] SpectralField random_low_mode_field(const SlabGrid& grid, int ncomp, Rng& rng, int max_mode,
                                                  std::span<const double> profile);

/// Horizontal Gaussian of the given width centred in the torus, times a
/// vertical profile. Mean removed, band limited.
[[nodiscard]] SpectralField horizontal_blob(const SlabGrid& grid, double width, std::span<const double> profile);

/// Physical field of independent standard normal samples.
[[nodiscard]] PhysicalField random_physical(const SlabGrid& grid, int ncomp, Rng& rng);

}  // namespace stokeslab
