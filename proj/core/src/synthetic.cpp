#include "stokeslab/synthetic.hpp"

#include <cmath>

#include "stokeslab/error.hpp"
#include "stokeslab/fft.hpp"
#include "stokeslab/product.hpp"

namespace stokeslab {

std::vector<cplx> random_hermitian_plane(const SlabGrid& g, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> plane(g.nxy());
    for (int m1 = 0; m1 < g.nx; ++m1) {
        for (int m2 = 0; m2 < g.ny; ++m2) {
            const std::size_t i = g.flat(m1, m2);
            const std::size_t j = g.conjugate_index(i);
            const double re = normal(rng);
            const double im = normal(rng);
            if (j < i || g.is_excluded_mode(m1, m2)) {
                continue;
            }
            plane[i] = cplx(re, im);
            plane[j] = cplx(re, -im);
        }
    }
    return plane;
}

SpectralField separable_field(const SlabGrid& g, std::span<const std::vector<cplx>> planes,
                              std::span<const double> profile) {
    if (profile.size() != static_cast<std::size_t>(g.nz)) {
        throw ShapeError("profile length does not match nz");
    }
    SpectralField f(g, static_cast<int>(planes.size()));
    for (int c = 0; c < f.ncomp(); ++c) {
        const auto& pl = planes[static_cast<std::size_t>(c)];
        if (pl.size() != g.nxy()) {
            throw ShapeError("plane size does not match the grid");
        }
        for (int k = 0; k < g.nz; ++k) {
            auto dst = f.plane(c, k);
            const double w = profile[static_cast<std::size_t>(k)];
            for (std::size_t i = 0; i < dst.size(); ++i) {
                dst[i] = pl[i] * w;
            }
        }
    }
    return f;
}

void add_cosine_mode(SpectralField& f, int c, int n1, int n2, double amplitude, std::span<const double> profile) {
    const auto& g = f.grid();
    if (profile.size() != static_cast<std::size_t>(g.nz)) {
        throw ShapeError("profile length does not match nz");
    }
    const int m1 = ((n1 % g.nx) + g.nx) % g.nx;
    const int m2 = ((n2 % g.ny) + g.ny) % g.ny;
    const std::size_t i = g.flat(m1, m2);
    const std::size_t j = g.conjugate_index(i);
    for (int k = 0; k < g.nz; ++k) {
        const double v = amplitude * profile[static_cast<std::size_t>(k)];
        if (i == j) {
            f.at(c, k, i) += v;
        } else {
            f.at(c, k, i) += 0.5 * v;
            f.at(c, k, j) += 0.5 * v;
        }
    }
}

std::vector<double> gaussian_profile(const SlabGrid& g, double width, double center) {
    std::vector<double> p(static_cast<std::size_t>(g.nz));
    for (int k = 0; k < g.nz; ++k) {
        const double x = (g.z(k) - center) / width;
        p[static_cast<std::size_t>(k)] = std::exp(-0.5 * x * x);
    }
    return p;
}

std::vector<double> constant_profile(const SlabGrid& g, double value) {
    return std::vector<double>(static_cast<std::size_t>(g.nz), value);
}

std::vector<double> modulated_profile(const SlabGrid& g, double width, double zeta, double phase, double center) {
    auto p = gaussian_profile(g, width, center);
    for (int k = 0; k < g.nz; ++k) {
        p[static_cast<std::size_t>(k)] *= std::cos(zeta * (g.z(k) - center) + phase);
    }
    return p;
}

std::vector<double> compact_bump_profile(const SlabGrid& g, double radius, double center) {
    std::vector<double> p(static_cast<std::size_t>(g.nz), 0.0);
    for (int k = 0; k < g.nz; ++k) {
        const double x = (g.z(k) - center) / radius;
        if (std::abs(x) < 1.0) {
            p[static_cast<std::size_t>(k)] = std::exp(1.0 - 1.0 / (1.0 - x * x));
        }
    }
    return p;
}

std::vector<double> indicator_profile(const SlabGrid& g, double radius, double center) {
    std::vector<double> p(static_cast<std::size_t>(g.nz), 0.0);
    for (int k = 0; k < g.nz; ++k) {
        if (std::abs(g.z(k) - center) <= radius + 1e-12 * radius) {
            p[static_cast<std::size_t>(k)] = 1.0;
        }
    }
    return p;
}

SpectralField random_smooth_field(const SlabGrid& g, int ncomp, Rng& rng, double width, bool band_limited) {
    SpectralField f(g, ncomp);
    const double shifts[3] = {0.0, -0.5 * width, 0.5 * width};
    const double zetas[3] = {0.0, 1.0 / width, 2.0 / width};
    for (int t = 0; t < 3; ++t) {
        const auto profile = modulated_profile(g, width, zetas[t], 0.3 * t, shifts[t]);
        std::vector<std::vector<cplx>> planes;
        for (int c = 0; c < ncomp; ++c) {
            planes.push_back(random_hermitian_plane(g, rng));
        }
        f.axpy(1.0, separable_field(g, planes, profile));
    }
    return band_limited ? truncate_to_band(f) : f;
}

SpectralField random_nodewise_field(const SlabGrid& g, int ncomp, Rng& rng, bool band_limited) {
    SpectralField f(g, ncomp);
    for (int c = 0; c < ncomp; ++c) {
        for (int k = 0; k < g.nz; ++k) {
            const auto plane = random_hermitian_plane(g, rng);
            auto dst = f.plane(c, k);
            std::copy(plane.begin(), plane.end(), dst.begin());
        }
    }
    return band_limited ? truncate_to_band(f) : f;
}

PhysicalField random_physical(const SlabGrid& g, int ncomp, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    PhysicalField f(g, ncomp);
    for (auto& v : f.data()) {
        v = normal(rng);
    }
    return f;
}

SpectralField random_low_mode_field(const SlabGrid& g, int ncomp, Rng& rng, int max_mode,
                                    std::span<const double> profile) {
    if (max_mode < 1) {
        throw ParameterError("max_mode must be >= 1");
    }
    std::vector<std::vector<cplx>> planes;
    for (int c = 0; c < ncomp; ++c) {
        auto plane = random_hermitian_plane(g, rng);
        for (int m1 = 0; m1 < g.nx; ++m1) {
            for (int m2 = 0; m2 < g.ny; ++m2) {
                if (std::abs(SlabGrid::mode(m1, g.nx)) > max_mode || std::abs(SlabGrid::mode(m2, g.ny)) > max_mode) {
                    plane[g.flat(m1, m2)] = 0.0;
                }
            }
        }
        planes.push_back(std::move(plane));
    }
    return truncate_to_band(separable_field(g, planes, profile));
}

SpectralField horizontal_blob(const SlabGrid& g, double width, std::span<const double> profile) {
    if (!(width > 0.0)) {
        throw ParameterError("blob width must be > 0");
    }
    if (profile.size() != static_cast<std::size_t>(g.nz)) {
        throw ShapeError("profile length does not match nz");
    }
    PhysicalField p(g, 1);
    for (int k = 0; k < g.nz; ++k) {
        const double w = profile[static_cast<std::size_t>(k)];
        for (int i1 = 0; i1 < g.nx; ++i1) {
            const double x = (p.x1(i1) - 0.5 * g.lx) / width;
            for (int i2 = 0; i2 < g.ny; ++i2) {
                const double y = (p.x2(i2) - 0.5 * g.ly) / width;
                p.at(0, k, i1, i2) = w * std::exp(-0.5 * (x * x + y * y));
            }
        }
    }
    return truncate_to_band(forward(p));
}

}  // namespace stokeslab
