#include "stokeslab/multiplier.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "stokeslab/error.hpp"
#include "stokeslab/parallel.hpp"

namespace stokeslab {

double bump_chi(double t, BumpKind kind) noexcept {
    constexpr double lo = 0.75;
    constexpr double hi = 4.0 / 3.0;
    if (t <= lo) {
        return 1.0;
    }
    if (t >= hi) {
        return 0.0;
    }
    const double s = (hi - t) / (hi - lo);
    if (kind == BumpKind::cosine) {
        return 0.5 * (1.0 - std::cos(std::numbers::pi * s));
    }
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

double bump_phi(double t, BumpKind kind) noexcept { return bump_chi(0.5 * t, kind) - bump_chi(t, kind); }

Symbol Symbol::partial(int axis) {
    if (axis == 1) {
        return partial_x1();
    }
    if (axis == 2) {
        return partial_x2();
    }
    throw ParameterError("horizontal derivative axis must be 1 or 2");
}

Symbol Symbol::exp_semigroup(double T) {
    if (!(T >= 0.0)) {
        throw ParameterError("exp_semigroup requires T >= 0");
    }
    return Symbol(Kind::exp_semigroup, T);
}

Symbol Symbol::block_weight(int j, BumpKind bump) noexcept { return Symbol(Kind::block_weight, 0.0, j, bump); }

double Symbol::factor(double xi1, double xi2) const noexcept {
    switch (kind_) {
        case Kind::partial_x1:
            return xi1;
        case Kind::partial_x2:
            return xi2;
        case Kind::modulus:
            return std::hypot(xi1, xi2);
        case Kind::inv_modulus: {
            const double a = std::hypot(xi1, xi2);
            return a > 0.0 ? 1.0 / a : 0.0;
        }
        case Kind::laplacian_h:
            return -(xi1 * xi1 + xi2 * xi2);
        case Kind::exp_semigroup:
            return std::exp(-t_ * std::hypot(xi1, xi2));
        case Kind::block_weight:
            return bump_phi(std::ldexp(std::hypot(xi1, xi2), -j_), bump_);
    }
    return 0.0;
}

void multiply_in_place(SpectralField& f, const Symbol& symbol) {
    const auto& g = f.grid();
    std::vector<double> table(g.nxy());
    for (int m1 = 0; m1 < g.nx; ++m1) {
        for (int m2 = 0; m2 < g.ny; ++m2) {
            table[g.flat(m1, m2)] = symbol.factor(g.xi1(m1), g.xi2(m2));
        }
    }
    const bool imag = symbol.imaginary();
    const auto planes = static_cast<std::size_t>(f.ncomp()) * static_cast<std::size_t>(g.nz);
    parallel_for(planes, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            auto pl = f.plane(static_cast<int>(p / static_cast<std::size_t>(g.nz)),
                              static_cast<int>(p % static_cast<std::size_t>(g.nz)));
            for (std::size_t i = 0; i < pl.size(); ++i) {
                const double r = table[i];
                const cplx v = pl[i];
                pl[i] = imag ? cplx(-v.imag() * r, v.real() * r) : cplx(v.real() * r, v.imag() * r);
            }
        }
    });
}

SpectralField multiply(const SpectralField& f, const Symbol& symbol) {
    SpectralField out = f;
    multiply_in_place(out, symbol);
    return out;
}

}  // namespace stokeslab
