#include "stokeslab/vertical.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "stokeslab/error.hpp"
#include "stokeslab/parallel.hpp"

namespace stokeslab {

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int m) {
    const int n = static_cast<int>(nodes.size());
    std::vector<std::vector<double>> c(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[static_cast<std::size_t>(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
            c2 *= c3;
            auto& ci = c[static_cast<std::size_t>(i)];
            auto& cj = c[static_cast<std::size_t>(j)];
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    ci[static_cast<std::size_t>(k)] =
                        c1 * (k * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                              c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) /
                        c2;
                }
                ci[0] = -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                cj[static_cast<std::size_t>(k)] =
                    (c4 * cj[static_cast<std::size_t>(k)] - k * cj[static_cast<std::size_t>(k - 1)]) / c3;
            }
            cj[0] = c4 * cj[0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        w[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
    }
    return w;
}

namespace {

struct Stencil {
    std::size_t start = 0;
    std::vector<double> w;
};

/// Stencils in units of h = 1, for every row of an n-node column.
class StencilTable {
public:
    StencilTable(std::size_t n, int order) {
        const long width = kVerticalAccuracy + order;
        const long half = kVerticalAccuracy / 2;
        const long len = static_cast<long>(n);
        rows_.resize(n);
        for (long k = 0; k < len; ++k) {
            long s = k - half;
            long w = 2 * half + 1;
            if (k < half) {
                s = 0;
                w = width;
            } else if (k + half >= len) {
                s = len - width;
                w = width;
            }
            std::vector<double> nodes(static_cast<std::size_t>(w));
            for (long q = 0; q < w; ++q) {
                nodes[static_cast<std::size_t>(q)] = static_cast<double>(s + q);
            }
            rows_[static_cast<std::size_t>(k)] = {static_cast<std::size_t>(s),
                                                  fd_weights(static_cast<double>(k), nodes, order)};
        }
    }

    [[nodiscard]] const Stencil& row(std::size_t k) const { return rows_[k]; }

private:
    std::vector<Stencil> rows_;
};

const StencilTable& table(std::size_t n, int order) {
    static std::mutex mutex;
    static std::map<std::pair<std::size_t, int>, std::unique_ptr<StencilTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{n, order}];
    if (!slot) {
        slot = std::make_unique<StencilTable>(n, order);
    }
    return *slot;
}

void check(std::size_t n, std::size_t out_n, int order) {
    if (order != 1 && order != 2) {
        throw ParameterError("vertical derivative order must be 1 or 2");
    }
    const std::size_t need = static_cast<std::size_t>(min_vertical_nodes(order));
    if (n < need) {
        throw GridError("nz = " + std::to_string(n) + " too small for the order-" + std::to_string(order) +
                        " stencil (need " + std::to_string(need) + ")");
    }
    if (out_n != n) {
        throw ShapeError("vertical derivative: output length mismatch");
    }
}

double scale(double h, int order) { return order == 1 ? 1.0 / h : 1.0 / (h * h); }

template <class T>
void apply(std::span<const T> in, std::span<T> out, double h, int order) {
    check(in.size(), out.size(), order);
    const double s = scale(h, order);
    const auto& t = table(in.size(), order);
    for (std::size_t k = 0; k < in.size(); ++k) {
        const Stencil& st = t.row(k);
        T acc = st.w[0] * in[st.start];
        for (std::size_t q = 1; q < st.w.size(); ++q) {
            acc += st.w[q] * in[st.start + q];
        }
        out[k] = acc * s;
    }
}

}  // namespace

int min_vertical_nodes(int order) noexcept {
    return kVerticalAccuracy + order;
}

void vertical_derivative(std::span<const cplx> in, std::span<cplx> out, double h, int order) {
    apply(in, out, h, order);
}

void vertical_derivative(std::span<const double> in, std::span<double> out, double h, int order) {
    apply(in, out, h, order);
}

SpectralField vertical_derivative(const SpectralField& f, int order) {
    const auto& g = f.grid();
    const auto nz = static_cast<std::size_t>(g.nz);
    check(nz, nz, order);
    SpectralField out(g, f.ncomp());
    const double s = scale(g.dz(), order);
    const auto& t = table(nz, order);
    const std::size_t rows = static_cast<std::size_t>(f.ncomp()) * nz;
    parallel_for(rows, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            const int c = static_cast<int>(r / nz);
            const std::size_t k = r % nz;
            const Stencil& st = t.row(k);
            auto dst = out.plane(c, static_cast<int>(k));
            auto src0 = f.plane(c, static_cast<int>(st.start));
            for (std::size_t i = 0; i < dst.size(); ++i) {
                dst[i] = st.w[0] * src0[i];
            }
            for (std::size_t q = 1; q < st.w.size(); ++q) {
                auto src = f.plane(c, static_cast<int>(st.start + q));
                const double w = st.w[q];
                for (std::size_t i = 0; i < dst.size(); ++i) {
                    dst[i] += w * src[i];
                }
            }
            for (auto& v : dst) {
                v *= s;
            }
        }
    });
    return out;
}

}  // namespace stokeslab
