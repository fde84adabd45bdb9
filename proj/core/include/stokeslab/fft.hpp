#pragma once

#include "stokeslab/field.hpp"

namespace stokeslab {

enum class Direction { forward, inverse };

/// What the forward transform keeps.
enum class Projection {
    homogeneous,  ///< zero the mean and the Nyquist rows (the library convention)
    none,         ///< keep every coefficient
};

/// Forward horizontal transform; coefficients are divided by nx*ny.
[[nodiscard]] SpectralField forward(const PhysicalField& f, Projection projection = Projection::homogeneous);

/// Exact discrete inverse of forward on the retained coefficients.
[[nodiscard]] PhysicalField inverse(const SpectralField& f);

/// Unnormalized 2D complex DFT of an n1 x n2 row-major array.
///
/// sign = -1 is the forward kernel e^{-i...}. `in` and `out` may alias.
/// Safe to call concurrently.
void dft2d(const cplx* in, cplx* out, int n1, int n2, int sign);

}  // namespace stokeslab
