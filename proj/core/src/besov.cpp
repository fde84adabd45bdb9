#include "stokeslab/besov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "stokeslab/diagnostics.hpp"
#include "stokeslab/error.hpp"
#include "stokeslab/fft.hpp"
#include "stokeslab/parallel.hpp"

namespace stokeslab {

Exponent Exponent::finite(double value) {
    if (!(value >= 1.0) || !std::isfinite(value)) {
        throw ParameterError("exponent must lie in [1, inf) (got " + std::to_string(value) + ")");
    }
    return Exponent(value);
}

Exponent Exponent::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf") {
        return infinity();
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw ParameterError("cannot parse exponent '" + text + "'");
    }
    return finite(v);
}

Exponent Exponent::conjugate() const noexcept {
    if (infinite_) {
        return Exponent(1.0);
    }
    if (value_ == 1.0) {
        return infinity();
    }
    return Exponent(value_ / (value_ - 1.0));
}

std::string Exponent::str() const {
    if (infinite_) {
        return "inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", value_);
    return buf;
}

double bracket(double z, double sigma) noexcept { return std::pow(1.0 + z * z, 0.5 * sigma); }

SpectralField bracket_weighted(const SpectralField& f, double sigma) {
    SpectralField out = f;
    if (sigma == 0.0) {
        return out;
    }
    const auto& g = f.grid();
    for (int c = 0; c < f.ncomp(); ++c) {
        for (int k = 0; k < g.nz; ++k) {
            const double w = bracket(g.z(k), sigma);
            for (auto& v : out.plane(c, k)) {
                v *= w;
            }
        }
    }
    return out;
}

double lq_norm(std::span<const double> values, const Exponent& q) {
    if (q.is_infinite()) {
        double m = 0.0;
        for (double v : values) {
            m = std::max(m, std::abs(v));
        }
        return m;
    }
    const double e = q.value();
    double s = 0.0;
    for (double v : values) {
        s += e == 1.0 ? std::abs(v) : std::pow(std::abs(v), e);
    }
    return e == 1.0 ? s : std::pow(s, 1.0 / e);
}

double vertical_norm(std::span<const double> per_node, double dz, const Exponent& r) {
    const std::size_t n = per_node.size();
    if (n == 0) {
        return 0.0;
    }
    if (r.is_infinite()) {
        return *std::max_element(per_node.begin(), per_node.end());
    }
    const double e = r.value();
    std::vector<double> terms(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = (k == 0 || k + 1 == n) ? 0.5 * dz : dz;
        terms[k] = w * (e == 2.0 ? per_node[k] * per_node[k] : std::pow(per_node[k], e));
    }
    const double s = pairwise_sum(terms);
    return e == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / e);
}

double mixed_norm(const PhysicalField& f, const Exponent& p, const Exponent& r) {
    const auto& g = f.grid();
    const auto nz = static_cast<std::size_t>(g.nz);
    std::vector<double> per_node(nz);
    const double area = g.cell_area();
    parallel_for(nz, [&](std::size_t begin, std::size_t end) {
        std::vector<double> terms(g.nxy());
        for (std::size_t k = begin; k < end; ++k) {
            for (std::size_t i = 0; i < g.nxy(); ++i) {
                double m2 = 0.0;
                for (int c = 0; c < f.ncomp(); ++c) {
                    const double v = f.plane(c, static_cast<int>(k))[i];
                    m2 += v * v;
                }
                if (p.is_infinite()) {
                    terms[i] = std::sqrt(m2);
                } else if (p.value() == 2.0) {
                    terms[i] = m2;
                } else {
                    terms[i] = std::pow(m2, 0.5 * p.value());
                }
            }
            if (p.is_infinite()) {
                per_node[k] = *std::max_element(terms.begin(), terms.end());
            } else {
                const double s = pairwise_sum(terms) * area;
                per_node[k] = p.value() == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p.value());
            }
        }
    });
    return vertical_norm(per_node, g.dz(), r);
}

double mixed_norm(const SpectralField& f, const Exponent& p, const Exponent& r) {
    if (p.is_infinite() || p.value() != 2.0) {
        return mixed_norm(inverse(f), p, r);
    }
    const auto& g = f.grid();
    const auto nz = static_cast<std::size_t>(g.nz);
    std::vector<double> per_node(nz);
    const double area = g.lx * g.ly;
    parallel_for(nz, [&](std::size_t begin, std::size_t end) {
        std::vector<double> terms(g.nxy());
        for (std::size_t k = begin; k < end; ++k) {
            for (std::size_t i = 0; i < g.nxy(); ++i) {
                double m2 = 0.0;
                for (int c = 0; c < f.ncomp(); ++c) {
                    m2 += std::norm(f.plane(c, static_cast<int>(k))[i]);
                }
                terms[i] = m2;
            }
            per_node[k] = std::sqrt(pairwise_sum(terms) * area);
        }
    });
    return vertical_norm(per_node, g.dz(), r);
}

BesovDetail besov_norm_detail(const DyadicLadder& ladder, const SpectralField& f, const BesovIndex& index) {
    require_same_grid(ladder.grid(), f.grid(), "besov_norm");
    if (index.sigma < 0.0) {
        throw ParameterError("weight exponent sigma must be >= 0");
    }
    BesovDetail out;
    int lo = ladder.j_min();
    int hi = ladder.j_max();
    if (index.part == Part::low) {
        hi = std::min(hi, index.N0);
    } else if (index.part == Part::high) {
        lo = std::max(lo, index.N0 - 1);
    }
    out.j_first = lo;
    out.j_last = hi;
    if (lo > hi) {
        out.empty_range = true;
        warn("besov_norm: selected block range is empty; returning 0");
        return out;
    }
    const SpectralField u = index.sigma > 0.0 ? bracket_weighted(f, index.sigma) : f;
    for (int j = lo; j <= hi; ++j) {
        const double n = mixed_norm(dyadic_block(ladder, u, j), index.p, index.r);
        out.weighted_blocks.push_back(std::exp2(index.s * j) * n);
    }
    out.value = lq_norm(out.weighted_blocks, index.q);
    return out;
}

double besov_norm(const DyadicLadder& ladder, const SpectralField& f, const BesovIndex& index) {
    return besov_norm_detail(ladder, f, index).value;
}

}  // namespace stokeslab
