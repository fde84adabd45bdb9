#include "stokeslab/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stokeslab/error.hpp"
#include "stokeslab/parallel.hpp"

namespace stokeslab {

DyadicLadder::DyadicLadder(const SlabGrid& grid, BumpKind bump) : grid_(grid), bump_(bump) {
    validate(grid);
    t_min_ = std::numeric_limits<double>::infinity();
    for (int m1 = 0; m1 < grid.nx; ++m1) {
        for (int m2 = 0; m2 < grid.ny; ++m2) {
            const double t = grid.modulus(m1, m2);
            if (t > 0.0) {
                t_min_ = std::min(t_min_, t);
                t_max_ = std::max(t_max_, t);
            }
        }
    }
    j_min_ = static_cast<int>(std::floor(std::log2(0.75 * t_min_)));
    j_max_ = static_cast<int>(std::ceil(std::log2(t_max_ * 2.0 / 3.0)));
    if (block_count() < 3) {
        throw LadderError("grid too coarse to host 3 dyadic blocks (j range [" + std::to_string(j_min_) + ", " +
                          std::to_string(j_max_) + "])");
    }
    weights_.resize(static_cast<std::size_t>(block_count()));
    for (int j = j_min_; j <= j_max_; ++j) {
        auto& w = weights_[static_cast<std::size_t>(j - j_min_)];
        w.assign(grid.nxy(), 0.0);
        for (int m1 = 0; m1 < grid.nx; ++m1) {
            for (int m2 = 0; m2 < grid.ny; ++m2) {
                const double t = grid.modulus(m1, m2);
                w[grid.flat(m1, m2)] = t > 0.0 ? bump_phi(std::ldexp(t, -j), bump) : 0.0;
            }
        }
    }
}

std::span<const double> DyadicLadder::weights(int j) const {
    if (!contains(j)) {
        throw IndexError("block " + std::to_string(j) + " outside ladder range [" + std::to_string(j_min_) + ", " +
                         std::to_string(j_max_) + "]");
    }
    return weights_[static_cast<std::size_t>(j - j_min_)];
}

double DyadicLadder::covered_lo() const noexcept { return std::ldexp(0.75, j_min_ + 1); }

double DyadicLadder::covered_hi() const noexcept { return std::ldexp(8.0 / 3.0, j_max_ - 1); }

double DyadicLadder::partition_residual(int samples) const {
    double worst = 0.0;
    auto sum_at = [&](double t) {
        double s = 0.0;
        for (int j = j_min_; j <= j_max_; ++j) {
            s += bump_phi(std::ldexp(t, -j), bump_);
        }
        return s;
    };
    const double lo = covered_lo();
    const double hi = covered_hi();
    for (int i = 0; i < samples; ++i) {
        const double t = lo + (hi - lo) * i / std::max(1, samples - 1);
        worst = std::max(worst, std::abs(sum_at(t) - 1.0));
    }
    for (std::size_t idx = 1; idx < grid_.nxy(); ++idx) {
        double s = 0.0;
        for (const auto& w : weights_) {
            s += w[idx];
        }
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

int DyadicLadder::max_overlap() const {
    int worst = 0;
    for (std::size_t idx = 0; idx < grid_.nxy(); ++idx) {
        int n = 0;
        for (const auto& w : weights_) {
            n += w[idx] != 0.0 ? 1 : 0;
        }
        worst = std::max(worst, n);
    }
    return worst;
}

DyadicLadder build_ladder(const SlabGrid& grid, BumpKind bump) { return DyadicLadder(grid, bump); }

SpectralField apply_weights(const SpectralField& f, std::span<const double> w) {
    const auto& g = f.grid();
    if (w.size() != g.nxy()) {
        throw ShapeError("weight table does not match the grid");
    }
    SpectralField out(g, f.ncomp());
    const auto planes = static_cast<std::size_t>(f.ncomp()) * static_cast<std::size_t>(g.nz);
    parallel_for(planes, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            const int c = static_cast<int>(p / static_cast<std::size_t>(g.nz));
            const int k = static_cast<int>(p % static_cast<std::size_t>(g.nz));
            auto src = f.plane(c, k);
            auto dst = out.plane(c, k);
            for (std::size_t i = 0; i < src.size(); ++i) {
                dst[i] = src[i] * w[i];
            }
        }
    });
    return out;
}

SpectralField dyadic_block(const DyadicLadder& ladder, const SpectralField& f, int j) {
    require_same_grid(ladder.grid(), f.grid(), "dyadic_block");
    return apply_weights(f, ladder.weights(j));
}

std::vector<double> low_pass_weights(const DyadicLadder& ladder, int j) {
    if (j > ladder.j_max() + 1) {
        throw IndexError("low_pass index " + std::to_string(j) + " beyond ladder top " +
                         std::to_string(ladder.j_max() + 1));
    }
    std::vector<double> w(ladder.grid().nxy(), 0.0);
    for (int jp = ladder.j_min(); jp <= j - 1; ++jp) {
        const auto b = ladder.weights(jp);
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] += b[i];
        }
    }
    return w;
}

SpectralField low_pass(const DyadicLadder& ladder, const SpectralField& f, int j) {
    require_same_grid(ladder.grid(), f.grid(), "low_pass");
    const auto w = low_pass_weights(ladder, j);
    return apply_weights(f, w);
}

}  // namespace stokeslab
