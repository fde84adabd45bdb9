#pragma once

namespace stokeslab {

/// Radial profile family used by the dyadic ladder.
enum class BumpKind {
    smooth,  ///< infinitely differentiable plateau transition
    cosine,  ///< raised-cosine transition, C^1
};

/// Plateau function: 1 on [0, 3/4], 0 on [4/3, inf), monotone in between.
[[nodiscard]] double bump_chi(double t, BumpKind kind = BumpKind::smooth) noexcept;

/// Annular profile phi(t) = chi(t/2) - chi(t); supported in [3/4, 8/3] and
/// identically 1 on [4/3, 3/2].
[[nodiscard]] double bump_phi(double t, BumpKind kind = BumpKind::smooth) noexcept;

}  // namespace stokeslab
