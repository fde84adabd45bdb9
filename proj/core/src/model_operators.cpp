#include "stokeslab/model_operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stokeslab/diagnostics.hpp"
#include "stokeslab/error.hpp"
#include "stokeslab/ladder.hpp"
#include "stokeslab/parallel.hpp"
#include "stokeslab/synthetic.hpp"

namespace stokeslab {

namespace {

double second_moment_weight(double x) {
    if (x < 0.1) {
        double term = 0.5;
        double sum = 0.0;
        for (int n = 0; n < 12; ++n) {
            sum += term;
            term *= -x * (n + 2.0) / ((n + 1.0) * (n + 3.0));
        }
        return sum;
    }
    return (-std::expm1(-x) - x * std::exp(-x)) / (x * x);
}

}  // namespace

SpectralField prefilter(const SpectralField& g) {
    const auto& grid = g.grid();
    SpectralField out = g;
    for (int c = 0; c < g.ncomp(); ++c) {
        for (int k = 2; k + 2 < grid.nz; ++k) {
            auto l2 = g.plane(c, k - 2);
            auto lo = g.plane(c, k - 1);
            auto mid = g.plane(c, k);
            auto hi = g.plane(c, k + 1);
            auto h2 = g.plane(c, k + 2);
            auto dst = out.plane(c, k);
            for (std::size_t i = 0; i < dst.size(); ++i) {
                const cplx d4 = l2[i] - 4.0 * lo[i] + 6.0 * mid[i] - 4.0 * hi[i] + h2[i];
                dst[i] = mid[i] + d4 * (11.0 / 720.0);
            }
        }
    }
    return out;
}

std::array<double, 4> exp_moments(double x) {
    std::array<double, 4> m{};
    if (x <= 2.0) {
        for (int n = 0; n < 4; ++n) {
            double term = 1.0;
            double sum = 0.0;
            for (int k = 0; k < 40; ++k) {
                sum += term / (n + k + 1.0);
                term *= -x / (k + 1.0);
            }
            m[static_cast<std::size_t>(n)] = sum;
        }
        return m;
    }
    const double e = std::exp(-x);
    m[0] = -std::expm1(-x) / x;
    for (int n = 1; n < 4; ++n) {
        m[static_cast<std::size_t>(n)] = (n * m[static_cast<std::size_t>(n - 1)] - e) / x;
    }
    return m;
}

CubicSegmentWeights cubic_segment_weights(double a, double h, int offset) {
    const double x = a * h;
    const auto mom = exp_moments(x);
    std::array<double, 4> pos{};
    for (int q = 0; q < 4; ++q) {
        pos[static_cast<std::size_t>(q)] = static_cast<double>(q - offset);
    }
    CubicSegmentWeights w;
    for (std::size_t m = 0; m < 4; ++m) {
        // power-basis coefficients of the cardinal polynomial in t and in 1 - t
        std::array<double, 4> fwd{1.0, 0.0, 0.0, 0.0};
        std::array<double, 4> rev{1.0, 0.0, 0.0, 0.0};
        double denom = 1.0;
        int deg = 0;
        for (std::size_t q = 0; q < 4; ++q) {
            if (q == m) {
                continue;
            }
            denom *= pos[m] - pos[q];
            const double r = pos[q];
            for (int d = deg + 1; d >= 1; --d) {
                fwd[static_cast<std::size_t>(d)] = fwd[static_cast<std::size_t>(d - 1)] - r * fwd[static_cast<std::size_t>(d)];
                rev[static_cast<std::size_t>(d)] = -rev[static_cast<std::size_t>(d - 1)] + (1.0 - r) * rev[static_cast<std::size_t>(d)];
            }
            fwd[0] *= -r;
            rev[0] *= 1.0 - r;
            ++deg;
        }
        double anti = 0.0;
        double causal = 0.0;
        for (std::size_t d = 0; d < 4; ++d) {
            anti += fwd[d] * mom[d];
            causal += rev[d] * mom[d];
        }
        w.anti[m] = h * anti / denom;
        w.causal[m] = h * causal / denom;
    }
    return w;
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::D0:
            return "D0";
        case ModelKind::D1:
            return "D1";
        case ModelKind::Dt0:
            return "Dt0";
        case ModelKind::Dt1:
            return "Dt1";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& text) {
    for (auto k : {ModelKind::D0, ModelKind::D1, ModelKind::Dt0, ModelKind::Dt1}) {
        if (text == to_string(k)) {
            return k;
        }
    }
    throw ParameterError("unknown model operator '" + text + "' (expected D0, D1, Dt0 or Dt1)");
}

ExpConvolutionPlan::ExpConvolutionPlan(double a, double h) : a_(a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw ParameterError("kernel rate a must be > 0");
    }
    if (!(h > 0.0)) {
        throw ParameterError("node spacing must be > 0");
    }
    const double x = a * h;
    decay_ = std::exp(-x);
    const double e0 = -std::expm1(-x) / a;
    const double e1 = h * second_moment_weight(x);
    near_ = e0 - e1;
    far_ = e1;
}

void ExpConvolutionPlan::apply(std::span<const cplx> in, std::span<cplx> out, KernelKind kind) const {
    const std::size_t n = in.size();
    if (out.size() != n) {
        throw ShapeError("exp_convolve: output length mismatch");
    }
    if (n == 0) {
        return;
    }
    std::vector<cplx> causal(n);
    causal[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        causal[i] = decay_ * causal[i - 1] + near_ * in[i] + far_ * in[i - 1];
    }
    cplx anti = 0.0;
    out[n - 1] = causal[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        anti = decay_ * anti + near_ * in[i] + far_ * in[i + 1];
        out[i] = kind == KernelKind::even ? causal[i] + anti : causal[i] - anti;
    }
}

std::vector<cplx> exp_convolve(std::span<const cplx> profile, double a, double dz, KernelKind kind) {
    ExpConvolutionPlan plan(a, dz);
    std::vector<cplx> out(profile.size());
    plan.apply(profile, out, kind);
    return out;
}

double check_vertical_boundary(const SpectralField& g, const std::string& context) {
    const auto& grid = g.grid();
    double peak = 0.0;
    double edge = 0.0;
    for (int c = 0; c < g.ncomp(); ++c) {
        for (int k = 0; k < grid.nz; ++k) {
            for (const auto& v : g.plane(c, k)) {
                const double m = std::abs(v);
                peak = std::max(peak, m);
                if (k == 0 || k == grid.nz - 1) {
                    edge = std::max(edge, m);
                }
            }
        }
    }
    const double rel = peak > 0.0 ? edge / peak : 0.0;
    if (rel > kBoundaryWarningThreshold) {
        std::ostringstream msg;
        msg << context << ": input magnitude at the vertical boundary is " << rel
            << " of its peak; the slab truncation is not negligible";
        warn(msg.str());
    }
    return rel;
}

SpectralField convolve_columns(const SpectralField& g, KernelKind kind, KernelScale scale) {
    const auto& grid = g.grid();
    const std::size_t nxy = grid.nxy();
    const auto nz = static_cast<std::size_t>(grid.nz);
    const double h = grid.dz();
    if (nz < 4) {
        throw GridError("model operators need nz >= 4 (got " + std::to_string(nz) + ")");
    }

    // weights[(pass * 3 + offset) * 4 + m][frequency]
    std::vector<std::vector<double>> weights(24, std::vector<double>(nxy, 0.0));
    std::vector<double> decay(nxy, 0.0);
    std::vector<double> factor(nxy, 0.0);
    for (int m1 = 0; m1 < grid.nx; ++m1) {
        for (int m2 = 0; m2 < grid.ny; ++m2) {
            const std::size_t i = grid.flat(m1, m2);
            const double a = grid.modulus(m1, m2);
            if (a == 0.0) {
                continue;
            }
            decay[i] = std::exp(-a * h);
            factor[i] = scale == KernelScale::d0 ? 0.5 / a : -0.5;
            for (int off = 0; off < 3; ++off) {
                const auto w = cubic_segment_weights(a, h, off);
                for (std::size_t m = 0; m < 4; ++m) {
                    weights[(static_cast<std::size_t>(off)) * 4 + m][i] = w.causal[m];
                    weights[(3 + static_cast<std::size_t>(off)) * 4 + m][i] = w.anti[m];
                }
            }
        }
    }
    const auto stencil_start = [nz](std::size_t seg) { return std::clamp<std::size_t>(seg, 1, nz - 3) - 1; };

    SpectralField out(grid, g.ncomp());
    const double sign = kind == KernelKind::even ? 1.0 : -1.0;
    const SpectralField src = prefilter(g);
    for (int c = 0; c < g.ncomp(); ++c) {
        parallel_for(nxy, [&](std::size_t begin, std::size_t end) {
            // acc[i] = decay * carry[i] + sum_m w_m f_{st+m}, over the chunk
            const auto step = [&](cplx* acc, const cplx* carry, std::size_t st, std::size_t base) {
                const cplx* f0 = src.plane(c, static_cast<int>(st)).data();
                const cplx* f1 = src.plane(c, static_cast<int>(st + 1)).data();
                const cplx* f2 = src.plane(c, static_cast<int>(st + 2)).data();
                const cplx* f3 = src.plane(c, static_cast<int>(st + 3)).data();
                const double* w0 = weights[base].data();
                const double* w1 = weights[base + 1].data();
                const double* w2 = weights[base + 2].data();
                const double* w3 = weights[base + 3].data();
                for (std::size_t i = begin; i < end; ++i) {
                    acc[i] = decay[i] * carry[i] + w0[i] * f0[i] + w1[i] * f1[i] + w2[i] * f2[i] + w3[i] * f3[i];
                }
            };
            auto first = out.plane(c, 0);
            for (std::size_t i = begin; i < end; ++i) {
                first[i] = 0.0;
            }
            for (std::size_t k = 1; k < nz; ++k) {
                const std::size_t st = stencil_start(k - 1);
                step(out.plane(c, static_cast<int>(k)).data(), out.plane(c, static_cast<int>(k - 1)).data(), st,
                     (k - 1 - st) * 4);
            }
            std::vector<cplx> anti_store(nxy, cplx{});
            cplx* anti = anti_store.data();
            auto last = out.plane(c, static_cast<int>(nz - 1));
            for (std::size_t i = begin; i < end; ++i) {
                last[i] *= factor[i];
            }
            for (std::size_t k = nz - 1; k-- > 0;) {
                const std::size_t st = stencil_start(k);
                step(anti, anti, st, (3 + k - st) * 4);
                auto dst = out.plane(c, static_cast<int>(k));
                for (std::size_t i = begin; i < end; ++i) {
                    dst[i] = factor[i] * (dst[i] + sign * anti[i]);
                }
            }
        });
    }
    return out;
}

SpectralField apply_model_operator(const SpectralField& g, ModelKind kind, bool check_boundary) {
    const auto& grid = g.grid();
    for (int c = 0; c < g.ncomp(); ++c) {
        for (int k = 0; k < grid.nz; ++k) {
            if (g.plane(c, k)[0] != cplx{}) {
                throw PreconditionError("model operator input has nonzero xi_h = 0 content");
            }
        }
    }
    if (check_boundary) {
        check_vertical_boundary(g, "apply_model_operator(" + to_string(kind) + ")");
    }
    switch (kind) {
        case ModelKind::D0:
            return convolve_columns(g, KernelKind::even, KernelScale::d0);
        case ModelKind::D1:
            return convolve_columns(g, KernelKind::odd, KernelScale::d1);
        case ModelKind::Dt0:
            return convolve_columns(convolve_columns(g, KernelKind::even, KernelScale::d0), KernelKind::even,
                                    KernelScale::d0);
        case ModelKind::Dt1:
            return convolve_columns(convolve_columns(g, KernelKind::even, KernelScale::d0), KernelKind::odd,
                                    KernelScale::d1);
    }
    return g;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    LinearFit fit;
    const std::size_t n = std::min(x.size(), y.size());
    fit.points = static_cast<int>(n);
    if (n < 2) {
        return fit;
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

namespace {

std::vector<double> block_profile(const SlabGrid& g, const KernelReportConfig& cfg, int j, double phase) {
    if (cfg.profile == ProfileFamily::dilated) {
        return gaussian_profile(g, cfg.width * std::exp2(-j));
    }
    return modulated_profile(g, cfg.width, cfg.kappa * std::exp2(j), phase);
}

// ||Delta_j (<x3>^sigma f)||_{L^r L^p}
double weighted_block_norm(const DyadicLadder& ladder, const SpectralField& f, int j, double sigma,
                           const Exponent& p, const Exponent& r) {
    if (p.is_infinite() || p.value() != 2.0) {
        return mixed_norm(dyadic_block(ladder, bracket_weighted(f, sigma), j), p, r);
    }
    const auto& g = f.grid();
    const auto w = ladder.weights(j);
    std::vector<double> per_node(static_cast<std::size_t>(g.nz));
    parallel_for(per_node.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> terms(g.nxy());
        for (std::size_t k = begin; k < end; ++k) {
            const auto plane = f.plane(0, static_cast<int>(k));
            for (std::size_t i = 0; i < terms.size(); ++i) {
                terms[i] = w[i] * w[i] * std::norm(plane[i]);
            }
            per_node[k] = bracket(g.z(static_cast<int>(k)), sigma) * std::sqrt(pairwise_sum(terms) * g.lx * g.ly);
        }
    });
    return vertical_norm(per_node, g.dz(), r);
}

LinearFit fit_range(const KernelReport& rep, int lo, int hi) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < rep.j.size(); ++i) {
        if (rep.j[i] >= lo && rep.j[i] <= hi) {
            x.push_back(rep.j[i]);
            y.push_back(std::log2(rep.ratio[i]));
        }
    }
    return fit_line(x, y);
}

}  // namespace

KernelReport kernel_estimate_report(const DyadicLadder& ladder, const KernelReportConfig& cfg) {
    const auto& g = ladder.grid();
    if (cfg.j_hi - cfg.j_lo + 1 < 4) {
        throw IndexError("kernel report needs at least 4 blocks (got [" + std::to_string(cfg.j_lo) + ", " +
                         std::to_string(cfg.j_hi) + "])");
    }
    if (!ladder.contains(cfg.j_lo) || !ladder.contains(cfg.j_hi)) {
        throw IndexError("block range [" + std::to_string(cfg.j_lo) + ", " + std::to_string(cfg.j_hi) +
                         "] not resolved by the ladder [" + std::to_string(ladder.j_min()) + ", " +
                         std::to_string(ladder.j_max()) + "]");
    }
    if (cfg.trials < 1) {
        throw ParameterError("kernel report needs at least one trial");
    }
    if (cfg.sigma < 0.0) {
        throw ParameterError("weight exponent sigma must be >= 0");
    }

    KernelReport rep;
    rep.kind = cfg.kind;
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    for (int j = cfg.j_lo; j <= cfg.j_hi; ++j) {
        Rng rng(cfg.seed + 1000003ULL * static_cast<std::uint64_t>(j - cfg.j_lo));
        double log_sum = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const double phase = uniform(rng);
            std::vector<std::vector<cplx>> plane{random_hermitian_plane(g, rng)};
            const auto w = ladder.weights(j);
            for (std::size_t i = 0; i < w.size(); ++i) {
                plane[0][i] *= w[i];
            }
            const SpectralField input = separable_field(g, plane, block_profile(g, cfg, j, phase));
            const SpectralField output = apply_model_operator(input, cfg.kind, false);
            const double num = weighted_block_norm(ladder, output, j, cfg.sigma, cfg.p, cfg.r);
            const double den = weighted_block_norm(ladder, input, j, cfg.sigma, cfg.p, cfg.r);
            log_sum += std::log(num / den);
        }
        rep.j.push_back(j);
        rep.ratio.push_back(std::exp(log_sum / cfg.trials));
    }
    rep.fit = fit_range(rep, cfg.j_lo, cfg.j_hi);
    if (cfg.sigma > 0.0) {
        rep.split = true;
        rep.low = fit_range(rep, cfg.j_lo, cfg.N0);
        rep.high = fit_range(rep, cfg.N0 - 1, cfg.j_hi);
    }
    return rep;
}

std::string kernel_report_csv(const KernelReport& rep) {
    std::ostringstream out;
    out.precision(17);
    out << "j,ratio,fitted_slope\n";
    for (std::size_t i = 0; i < rep.j.size(); ++i) {
        out << rep.j[i] << ',' << rep.ratio[i] << ',' << rep.fit.slope << '\n';
    }
    return out.str();
}

}  // namespace stokeslab
