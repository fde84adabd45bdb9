#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "stokeslab/field.hpp"
#include "stokeslab/grid.hpp"

namespace testing {

using stokeslab::cplx;
using stokeslab::SlabGrid;
using stokeslab::SpectralField;

inline constexpr double kPi = std::numbers::pi;

inline double max_abs_diff(const SpectralField& a, const SpectralField& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

inline double rel_max_diff(const SpectralField& a, const SpectralField& b) {
    const double scale = std::max(a.max_abs(), b.max_abs());
    return scale > 0.0 ? max_abs_diff(a, b) / scale : 0.0;
}

inline bool bitwise_equal(const SpectralField& a, const SpectralField& b) {
    if (a.grid() != b.grid() || a.ncomp() != b.ncomp()) {
        return false;
    }
    return std::equal(a.data().begin(), a.data().end(), b.data().begin(), [](cplx x, cplx y) {
        return x.real() == y.real() && x.imag() == y.imag();
    });
}

/// Brute-force evaluation of component c at node k and point (x1, x2).
inline double evaluate(const SpectralField& f, int c, int k, double x1, double x2) {
    const SlabGrid& g = f.grid();
    double v = 0.0;
    for (int m1 = 0; m1 < g.nx; ++m1) {
        for (int m2 = 0; m2 < g.ny; ++m2) {
            const double phase = g.xi1(m1) * x1 + g.xi2(m2) * x2;
            v += std::real(f.at(c, k, g.flat(m1, m2)) * std::polar(1.0, phase));
        }
    }
    return v;
}

/// Trapezoidal weights on the vertical nodes.
inline std::vector<double> trapezoid(const SlabGrid& g) {
    std::vector<double> w(static_cast<std::size_t>(g.nz), g.dz());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

/// Adjacent log2 ratio of two errors.
inline double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace testing
