#pragma once

#include "stokeslab/bump.hpp"
#include "stokeslab/field.hpp"

namespace stokeslab {

/// A horizontal Fourier multiplier, diagonal in frequency.
class Symbol {
public:
    enum class Kind {
        partial_x1,      ///< i xi_1
        partial_x2,      ///< i xi_2
        modulus,         ///< |xi_h|
        inv_modulus,     ///< 1/|xi_h|, zero at xi_h = 0
        laplacian_h,     ///< -|xi_h|^2
        exp_semigroup,   ///< exp(-T |xi_h|)
        block_weight,    ///< phi(2^{-j} |xi_h|)
    };

    static Symbol partial_x1() noexcept { return Symbol(Kind::partial_x1); }
    static Symbol partial_x2() noexcept { return Symbol(Kind::partial_x2); }
    /// Horizontal partial derivative d/dx_axis, axis in {1, 2}.
    static Symbol partial(int axis);
    static Symbol modulus() noexcept { return Symbol(Kind::modulus); }
    static Symbol inv_modulus() noexcept { return Symbol(Kind::inv_modulus); }
    static Symbol laplacian_h() noexcept { return Symbol(Kind::laplacian_h); }
    /// Throws ParameterError when T < 0.
    static Symbol exp_semigroup(double T);
    static Symbol block_weight(int j, BumpKind bump = BumpKind::smooth) noexcept;

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

    /// True when the symbol value is purely imaginary.
    [[nodiscard]] bool imaginary() const noexcept {
        return kind_ == Kind::partial_x1 || kind_ == Kind::partial_x2;
    }
    /// Real factor r such that the symbol equals r or i*r at (xi1, xi2).
    [[nodiscard]] double factor(double xi1, double xi2) const noexcept;

private:
    explicit Symbol(Kind kind, double t = 0.0, int j = 0, BumpKind bump = BumpKind::smooth) noexcept
        : kind_(kind), t_(t), j_(j), bump_(bump) {}

    Kind kind_;
    double t_;
    int j_;
    BumpKind bump_;
};

/// Multiplies every coefficient of f by the symbol at its frequency.
[[nodiscard]] SpectralField multiply(const SpectralField& f, const Symbol& symbol);
void multiply_in_place(SpectralField& f, const Symbol& symbol);

}  // namespace stokeslab
