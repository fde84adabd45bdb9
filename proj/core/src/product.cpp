#include "stokeslab/product.hpp"

#include <cstdlib>

#include "stokeslab/error.hpp"
#include "stokeslab/fft.hpp"
#include "stokeslab/parallel.hpp"

namespace stokeslab {

namespace {

int wrap(int n, int m) { return ((n % m) + m) % m; }

}  // namespace

std::vector<bool> dealias_mask(const SlabGrid& g) {
    std::vector<bool> keep(g.nxy(), false);
    for (int m1 = 0; m1 < g.nx; ++m1) {
        for (int m2 = 0; m2 < g.ny; ++m2) {
            const int n1 = SlabGrid::mode(m1, g.nx);
            const int n2 = SlabGrid::mode(m2, g.ny);
            keep[g.flat(m1, m2)] = std::abs(n1) <= g.nx / 3 && std::abs(n2) <= g.ny / 3 && !(n1 == 0 && n2 == 0);
        }
    }
    return keep;
}

SpectralField truncate_to_band(const SpectralField& f) {
    SpectralField out = f;
    const auto keep = dealias_mask(f.grid());
    for (int c = 0; c < f.ncomp(); ++c) {
        for (int k = 0; k < f.grid().nz; ++k) {
            auto p = out.plane(c, k);
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (!keep[i]) {
                    p[i] = 0.0;
                }
            }
        }
    }
    return out;
}

PaddedSamples padded_samples(const SpectralField& f, int c) {
    const auto& g = f.grid();
    PaddedSamples out{3 * g.nx / 2, 3 * g.ny / 2, g.nz, {}};
    const std::size_t mxy = static_cast<std::size_t>(out.mx) * static_cast<std::size_t>(out.my);
    out.values.assign(mxy * static_cast<std::size_t>(g.nz), 0.0);
    std::vector<std::size_t> target(g.nxy());
    for (int m1 = 0; m1 < g.nx; ++m1) {
        for (int m2 = 0; m2 < g.ny; ++m2) {
            const int p1 = wrap(SlabGrid::mode(m1, g.nx), out.mx);
            const int p2 = wrap(SlabGrid::mode(m2, g.ny), out.my);
            target[g.flat(m1, m2)] = static_cast<std::size_t>(p1) * static_cast<std::size_t>(out.my) +
                                     static_cast<std::size_t>(p2);
        }
    }
    parallel_for(static_cast<std::size_t>(g.nz), [&](std::size_t begin, std::size_t end) {
        std::vector<cplx> work(mxy);
        for (std::size_t k = begin; k < end; ++k) {
            std::fill(work.begin(), work.end(), cplx{});
            auto src = f.plane(c, static_cast<int>(k));
            for (std::size_t i = 0; i < src.size(); ++i) {
                const int m1 = static_cast<int>(i / static_cast<std::size_t>(g.ny));
                const int m2 = static_cast<int>(i % static_cast<std::size_t>(g.ny));
                if (m1 == g.nx / 2 || m2 == g.ny / 2) {
                    continue;
                }
                work[target[i]] = src[i];
            }
            dft2d(work.data(), work.data(), out.mx, out.my, +1);
            double* dst = out.values.data() + k * mxy;
            for (std::size_t i = 0; i < mxy; ++i) {
                dst[i] = work[i].real();
            }
        }
    });
    return out;
}

SpectralField product_from_samples(const PaddedSamples& a, const PaddedSamples& b, const SlabGrid& g) {
    if (a.mx != b.mx || a.my != b.my || a.nz != b.nz || a.mx != 3 * g.nx / 2 || a.my != 3 * g.ny / 2 ||
        a.nz != g.nz) {
        throw ShapeError("dealiased product: padded sample shapes disagree");
    }
    SpectralField out(g, 1);
    const std::size_t mxy = static_cast<std::size_t>(a.mx) * static_cast<std::size_t>(a.my);
    const double norm = 1.0 / static_cast<double>(mxy);
    const auto keep = dealias_mask(g);
    std::vector<std::size_t> source(g.nxy());
    for (int m1 = 0; m1 < g.nx; ++m1) {
        for (int m2 = 0; m2 < g.ny; ++m2) {
            const int p1 = wrap(SlabGrid::mode(m1, g.nx), a.mx);
            const int p2 = wrap(SlabGrid::mode(m2, g.ny), a.my);
            source[g.flat(m1, m2)] = static_cast<std::size_t>(p1) * static_cast<std::size_t>(a.my) +
                                     static_cast<std::size_t>(p2);
        }
    }
    parallel_for(static_cast<std::size_t>(g.nz), [&](std::size_t begin, std::size_t end) {
        std::vector<cplx> work(mxy);
        for (std::size_t k = begin; k < end; ++k) {
            const double* pa = a.values.data() + k * mxy;
            const double* pb = b.values.data() + k * mxy;
            for (std::size_t i = 0; i < mxy; ++i) {
                work[i] = pa[i] * pb[i];
            }
            dft2d(work.data(), work.data(), a.mx, a.my, -1);
            auto dst = out.plane(0, static_cast<int>(k));
            for (std::size_t i = 0; i < dst.size(); ++i) {
                dst[i] = keep[i] ? work[source[i]] * norm : cplx{};
            }
            symmetrize_plane(dst, g);
        }
    });
    return out;
}

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a.grid(), b.grid(), "dealiased_product");
    if (a.ncomp() != 1 || b.ncomp() != 1) {
        throw ShapeError("dealiased_product expects scalar fields");
    }
    return product_from_samples(padded_samples(a), padded_samples(b), a.grid());
}

SpectralField aliased_product(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a.grid(), b.grid(), "aliased_product");
    if (a.ncomp() != 1 || b.ncomp() != 1) {
        throw ShapeError("aliased_product expects scalar fields");
    }
    const PhysicalField pa = inverse(a);
    PhysicalField pb = inverse(b);
    auto out = pb.data();
    auto in = pa.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] *= in[i];
    }
    return forward(pb);
}

}  // namespace stokeslab
