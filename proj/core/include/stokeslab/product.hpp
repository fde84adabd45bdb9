#pragma once

#include <vector>

#include "stokeslab/field.hpp"

namespace stokeslab {

/// Samples of one scalar component on the 3/2-refined horizontal grid,
/// laid out (vertical node, x1, x2).
struct PaddedSamples {
    int mx = 0;
    int my = 0;
    int nz = 0;
    std::vector<double> values;
};

/// Zero-pads component c of f to the 3/2 grid and transforms to samples.
[[nodiscard]] PaddedSamples padded_samples(const SpectralField& f, int c = 0);

/// Product of two padded sample sets, returned as coefficients on `grid`
/// truncated to the two-thirds band |n_i| <= n_i/3 with the mean removed.
[[nodiscard]] SpectralField product_from_samples(const PaddedSamples& a, const PaddedSamples& b,
                                                 const SlabGrid& grid);

/// Dealiased product of two scalar fields.
[[nodiscard]] SpectralField dealiased_product(const SpectralField& a, const SpectralField& b);

/// Product on the native grid without padding (aliased), mean removed.
[[nodiscard]] SpectralField aliased_product(const SpectralField& a, const SpectralField& b);

/// True for flat frequencies retained by the dealiased product.
[[nodiscard]] std::vector<bool> dealias_mask(const SlabGrid& grid);

/// Copy of f with every coefficient outside the two-thirds band zeroed.
[[nodiscard]] SpectralField truncate_to_band(const SpectralField& f);

}  // namespace stokeslab
