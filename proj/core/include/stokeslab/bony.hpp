#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stokeslab/besov.hpp"
#include "stokeslab/ladder.hpp"

namespace stokeslab {

/// T_f g = sum_j S_{j-1} f * Delta_j g, each product dealiased.
[[nodiscard]] SpectralField paraproduct(const DyadicLadder& ladder, const SpectralField& f, const SpectralField& g);

/// R(f, g) = sum_j sum_{|nu|<=1} Delta_j f * Delta_{j+nu} g, each product dealiased.
[[nodiscard]] SpectralField remainder(const DyadicLadder& ladder, const SpectralField& f, const SpectralField& g);

enum class ProductLaw { paraproduct, remainder, both };

struct ProductLawConfig {
    ProductLaw law = ProductLaw::both;
    double s1 = -0.5;
    double s2 = 1.0;
    Exponent p1 = Exponent::finite(4.0);
    Exponent p2 = Exponent::finite(4.0);
    Exponent q1 = Exponent::finite(2.0);
    Exponent q2 = Exponent::finite(2.0);
    Exponent r1 = Exponent::finite(2.0);
    Exponent r2 = Exponent::finite(2.0);
    int trials = 50;
    std::uint64_t seed = 3;
};

struct ProductLawLevel {
    SlabGrid grid;
    std::vector<double> ratio_para;
    std::vector<double> ratio_rem;
    double max_para = 0.0;
    double max_rem = 0.0;
};

struct ProductLawReport {
    std::vector<ProductLawLevel> levels;
    double growth_para = 1.0;
    double growth_rem = 1.0;
    /// True when a per-level maximum grows by more than `factor` across levels.
    [[nodiscard]] bool unbounded(double factor = 2.0) const noexcept {
        return growth_para > factor || growth_rem > factor;
    }
};

/// Target index of the product laws: s = s1 + s2 and Hoelder-conjugate
/// exponents. Throws PreconditionError when some 1/p_1 + 1/p_2 exceeds 1 or
/// the selected law's hypothesis (s1 < 0, s1 + s2 > 0) fails.
[[nodiscard]] BesovIndex product_target_index(const ProductLawConfig& cfg);

/// Ratios of the product laws over random band-limited pairs on each grid.
[[nodiscard]] ProductLawReport product_law_report(const std::vector<SlabGrid>& grids, const ProductLawConfig& cfg);

[[nodiscard]] std::string product_law_csv(const ProductLawLevel& level);

}  // namespace stokeslab
