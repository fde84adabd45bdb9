#pragma once

#include <span>
#include <vector>

#include "stokeslab/field.hpp"

namespace stokeslab {

/// Formal accuracy of the vertical stencils.
inline constexpr int kVerticalAccuracy = 6;

/// Finite-difference weights for the m-th derivative at x0 over the given nodes.
[[nodiscard]] std::vector<double> fd_weights(double x0, std::span<const double> nodes, int m);

/// Smallest column length accepted for a derivative of the given order.
[[nodiscard]] int min_vertical_nodes(int order) noexcept;

/// d^order/dx3^order of a nodal profile with spacing h (order 1 or 2).
///
/// Centered differences in the interior, one-sided stencils of the same
/// accuracy near each end. Short columns raise GridError.
void vertical_derivative(std::span<const cplx> in, std::span<cplx> out, double h, int order);
void vertical_derivative(std::span<const double> in, std::span<double> out, double h, int order);

/// Applies the vertical derivative to every component and frequency.
[[nodiscard]] SpectralField vertical_derivative(const SpectralField& f, int order);

}  // namespace stokeslab
