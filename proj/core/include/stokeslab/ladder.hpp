#pragma once

#include <span>
#include <vector>

#include "stokeslab/bump.hpp"
#include "stokeslab/field.hpp"

namespace stokeslab {

/// Littlewood-Paley filter bank phi(2^{-j}|xi_h|), j in [j_min, j_max], on
/// the discrete frequency set of one grid.
class DyadicLadder {
public:
    DyadicLadder(const SlabGrid& grid, BumpKind bump);

    [[nodiscard]] const SlabGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] BumpKind bump() const noexcept { return bump_; }
    [[nodiscard]] int j_min() const noexcept { return j_min_; }
    [[nodiscard]] int j_max() const noexcept { return j_max_; }
    [[nodiscard]] int block_count() const noexcept { return j_max_ - j_min_ + 1; }
    [[nodiscard]] bool contains(int j) const noexcept { return j >= j_min_ && j <= j_max_; }

    /// Block weights phi(2^{-j}|xi|) indexed by flat frequency. Throws IndexError.
    [[nodiscard]] std::span<const double> weights(int j) const;

    /// Smallest and largest nonzero |xi_h| on the grid.
    [[nodiscard]] double t_min() const noexcept { return t_min_; }
    [[nodiscard]] double t_max() const noexcept { return t_max_; }

    /// Interval on which the block sum is identically one.
    [[nodiscard]] double covered_lo() const noexcept;
    [[nodiscard]] double covered_hi() const noexcept;

    /// max |sum_j phi(2^{-j}t) - 1| over `samples` points of the covered
    /// interval and over every nonzero grid frequency.
    [[nodiscard]] double partition_residual(int samples = 20001) const;

    /// Largest number of simultaneously nonzero blocks at any grid frequency.
    [[nodiscard]] int max_overlap() const;

private:
    SlabGrid grid_;
    BumpKind bump_;
    int j_min_ = 0;
    int j_max_ = 0;
    double t_min_ = 0.0;
    double t_max_ = 0.0;
    std::vector<std::vector<double>> weights_;
};

/// Builds the ladder; throws LadderError when fewer than 3 blocks fit.
[[nodiscard]] DyadicLadder build_ladder(const SlabGrid& grid, BumpKind bump = BumpKind::smooth);

/// Delta_j f. Throws IndexError when j is outside the ladder.
[[nodiscard]] SpectralField dyadic_block(const DyadicLadder& ladder, const SpectralField& f, int j);

/// S_j f = sum of Delta_j' f over ladder blocks j' <= j - 1 (zero below the
/// ladder). Throws IndexError when j > j_max + 1.
[[nodiscard]] SpectralField low_pass(const DyadicLadder& ladder, const SpectralField& f, int j);

/// Weights of S_j per flat frequency.
[[nodiscard]] std::vector<double> low_pass_weights(const DyadicLadder& ladder, int j);

/// Multiplies f by per-frequency real weights (one value per flat frequency).
[[nodiscard]] SpectralField apply_weights(const SpectralField& f, std::span<const double> w);

}  // namespace stokeslab
