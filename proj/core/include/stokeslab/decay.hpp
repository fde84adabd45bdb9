#pragma once

#include <string>
#include <vector>

#include "stokeslab/field.hpp"
#include "stokeslab/model_operators.hpp"

namespace stokeslab {

/// Range of <x3> values used by the decay fit.
struct DecayWindow {
    double lo = 6.0;
    double hi = 20.0;
};

struct DecaySample {
    double z = 0.0;
    double bracket = 0.0;
    double magnitude = 0.0;
};

struct DecayBranch {
    std::vector<DecaySample> samples;
    LinearFit fit;      ///< log m against log <x3>
    double sigma = 0.0; ///< -slope
};

struct DecayReport {
    double sigma_target = 0.0;
    DecayWindow window;
    DecayBranch positive;
    DecayBranch negative;
    double sigma_fit = 0.0;
    /// Larger branch RMS residual of the log-log fit.
    double residual = 0.0;
    /// Set when the residual exceeds the curvature threshold.
    bool curved = false;
};

inline constexpr double kDecayCurvatureThreshold = 0.05;

/// Per-node horizontal maximum of the pointwise magnitude |u|.
[[nodiscard]] std::vector<double> horizontal_sup(const SpectralField& u);
[[nodiscard]] std::vector<double> horizontal_sup(const PhysicalField& u);

/// Fits m(x3) ~ <x3>^{-sigma} on both vertical branches of the window.
///
/// Throws ParameterError when a branch has fewer than 8 nodes in the window
/// or the window comes within 10% of the slab height of either end.
[[nodiscard]] DecayReport decay_fit(const SlabGrid& grid, std::span<const double> magnitude, double sigma_target,
                                    const DecayWindow& window);
[[nodiscard]] DecayReport decay_fit(const SpectralField& u, double sigma_target, const DecayWindow& window);
[[nodiscard]] DecayReport decay_fit(const PhysicalField& u, double sigma_target, const DecayWindow& window);

[[nodiscard]] std::string decay_csv(const DecayReport& report);

}  // namespace stokeslab
