#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "stokeslab/diagnostics.hpp"
#include "stokeslab/error.hpp"
#include "stokeslab/ladder.hpp"
#include "stokeslab/model_operators.hpp"
#include "stokeslab/synthetic.hpp"
#include "stokeslab/vertical.hpp"
#include "support.hpp"

using namespace stokeslab;
using testing::kPi;

namespace {

/// Closed form of the integral of K(x - y) exp(-y^2 / (2 W^2)) over the line.
double gaussian_convolution(double x, double a, double w, KernelKind kind) {
    const double pre = w * std::sqrt(kPi / 2.0) * std::exp(0.5 * a * a * w * w);
    const double left = std::exp(-a * x) * std::erfc((a * w * w - x) / (std::sqrt(2.0) * w));
    const double right = std::exp(a * x) * std::erfc((a * w * w + x) / (std::sqrt(2.0) * w));
    return pre * (kind == KernelKind::even ? left + right : left - right);
}

std::vector<cplx> nodal(const SlabGrid& g, auto&& fn) {
    std::vector<cplx> p(static_cast<std::size_t>(g.nz));
    for (int k = 0; k < g.nz; ++k) {
        p[k] = fn(g.z(k));
    }
    return p;
}

/// Indicator of [-1, 1] with half weight on nodes that sit exactly on an end.
std::vector<double> balanced_indicator(const SlabGrid& g) {
    std::vector<double> p(static_cast<std::size_t>(g.nz));
    for (int k = 0; k < g.nz; ++k) {
        const double d = std::abs(g.z(k)) - 1.0;
        p[k] = std::abs(d) < 1e-12 ? 0.5 : (d < 0.0 ? 1.0 : 0.0);
    }
    return p;
}

SlabGrid column_grid(int nz, double half = 8.0) { return make_grid(8, 8, 2 * kPi, 2 * kPi, nz, -half, half); }

SpectralField cosine(const SlabGrid& g, int n1, int n2, std::span<const double> profile) {
    SpectralField f(g, 1);
    add_cosine_mode(f, 0, n1, n2, 1.0, profile);
    return f;
}

struct QuietWarnings {
    int count = 0;
    QuietWarnings() {
        set_warning_handler([this](const std::string&) { ++count; });
    }
    ~QuietWarnings() { reset_warning_handler(); }
};

}  // namespace

TEST_CASE("even kernel on an indicator at the origin") {
    auto error_at = [](int nz) {
        const SlabGrid g = column_grid(nz);
        const auto ind = balanced_indicator(g);
        std::vector<cplx> p(ind.begin(), ind.end());
        const auto out = exp_convolve(p, 1.0, g.dz(), KernelKind::even);
        return std::abs(out[static_cast<std::size_t>(nz / 2)].real() - 2.0 * (1.0 - std::exp(-1.0)));
    };
    const double e1 = error_at(257);
    const double e2 = error_at(513);
    const double dz = 16.0 / 256;
    CHECK(e1 <= dz * dz);
    CHECK(e1 / e2 >= 3.5);
}

TEST_CASE("odd kernel against an even profile vanishes at the origin") {
    const SlabGrid g = column_grid(257);
    const auto p = nodal(g, [](double z) { return std::exp(-0.5 * z * z) * (1.0 + 0.3 * std::cos(z)); });
    const auto out = exp_convolve(p, 1.3, g.dz(), KernelKind::odd);
    CHECK(std::abs(out[128]) <= 1e-15);
}

TEST_CASE("exp_convolve converges at second order to the closed form") {
    for (KernelKind kind : {KernelKind::even, KernelKind::odd}) {
        for (double a : {0.5, 2.0}) {
            auto max_error = [&](int nz) {
                const SlabGrid g = column_grid(nz);
                const auto p = nodal(g, [](double z) { return std::exp(-0.5 * z * z); });
                const auto out = exp_convolve(p, a, g.dz(), kind);
                double worst = 0.0;
                for (int k = 0; k < nz; ++k) {
                    worst = std::max(worst, std::abs(out[k].real() - gaussian_convolution(g.z(k), a, 1.0, kind)));
                }
                return worst;
            };
            CHECK(max_error(129) / max_error(257) >= 3.8);
        }
    }
}

TEST_CASE("exp_convolve is exact on linear segments") {
    const double h = 0.25;
    ExpConvolutionPlan plan(1.5, h);
    std::vector<cplx> p{0.0, 1.0, 0.0};
    std::vector<cplx> out(3);
    plan.apply(p, out, KernelKind::even);
    // Hat centred at y = h, evaluated at x = 0: integral of e^{-a y} (1 - |y - h| / h).
    const double a = 1.5;
    const double up = (1.0 - std::exp(-a * h) * (1.0 + a * h)) / (a * a * h);
    const double down = (std::exp(-a * h) * (a * h - 1.0) + std::exp(-2.0 * a * h)) / (a * a * h);
    CHECK(out[0].real() == doctest::Approx(up + down).epsilon(1e-14));
    CHECK(plan.decay() == doctest::Approx(std::exp(-a * h)));
    CHECK_THROWS_AS(ExpConvolutionPlan(0.0, h), ParameterError);
    CHECK_THROWS_AS((void)exp_convolve(p, -1.0, h, KernelKind::even), ParameterError);
}

TEST_CASE("exponential moments match quadrature") {
    for (double x : {0.0, 1e-3, 0.7, 2.0, 2.5, 9.0, 60.0}) {
        const auto m = exp_moments(x);
        for (int n = 0; n < 4; ++n) {
            double s = 0.0;
            const int steps = 20000;
            for (int i = 0; i <= steps; ++i) {
                const double t = static_cast<double>(i) / steps;
                const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
                s += w * std::exp(-x * t) * std::pow(t, n);
            }
            s /= 3.0 * steps;
            CHECK(m[n] == doctest::Approx(s).epsilon(1e-9));
        }
    }
}

TEST_CASE("cubic segment weights integrate the cardinal functions") {
    const double h = 0.3;
    for (double a : {0.1, 1.0, 7.0}) {
        for (int offset = 0; offset < 3; ++offset) {
            const auto w = cubic_segment_weights(a, h, offset);
            for (int m = 0; m < 4; ++m) {
                auto cardinal = [&](double s) {
                    const double t = offset + s / h;
                    double v = 1.0;
                    for (int q = 0; q < 4; ++q) {
                        if (q != m) {
                            v *= (t - q) / static_cast<double>(m - q);
                        }
                    }
                    return v;
                };
                double causal = 0.0;
                double anti = 0.0;
                const int steps = 4000;
                for (int i = 0; i <= steps; ++i) {
                    const double s = h * i / steps;
                    const double wt = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
                    causal += wt * std::exp(-a * (h - s)) * cardinal(s);
                    anti += wt * std::exp(-a * s) * cardinal(s);
                }
                causal *= h / (3.0 * steps);
                anti *= h / (3.0 * steps);
                CHECK(w.causal[m] == doctest::Approx(causal).epsilon(1e-10));
                CHECK(w.anti[m] == doctest::Approx(anti).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("prefilter adds the fourth difference") {
    const SlabGrid g = column_grid(9, 1.0);
    const auto prof = std::vector<double>{0, 0, 1, 2, 5, 2, 1, 0, 0};
    const SpectralField f = cosine(g, 1, 0, prof);
    const SpectralField pf = prefilter(f);
    const std::size_t idx = g.flat(1, 0);
    const double d4 = prof[2] - 4 * prof[3] + 6 * prof[4] - 4 * prof[5] + prof[6];
    CHECK(pf.at(0, 4, idx).real() == doctest::Approx(0.5 * (prof[4] + 11.0 / 720.0 * d4)));
    CHECK(pf.at(0, 0, idx) == f.at(0, 0, idx));
    CHECK(pf.at(0, 1, idx) == f.at(0, 1, idx));
}

TEST_CASE("D0 of an indicator mode at the phase peak") {
    auto error_at = [](int nz) {
        const SlabGrid g = column_grid(nz);
        const SpectralField f = cosine(g, 1, 0, balanced_indicator(g));
        QuietWarnings quiet;
        const SpectralField u = apply_model_operator(f, ModelKind::D0);
        const double peak = 2.0 * u.at(0, nz / 2, g.flat(1, 0)).real();
        return std::abs(peak - (1.0 - std::exp(-1.0)));
    };
    const double dz = 16.0 / 256;
    const double e1 = error_at(257);
    CHECK(e1 <= dz * dz);
    CHECK(e1 / error_at(513) >= 3.5);
}

TEST_CASE("D0 solves the vertical Poisson ODE") {
    auto residual = [](int nz) {
        const SlabGrid g = make_grid(8, 8, 2 * kPi, 2 * kPi, nz, -8.0, 8.0);
        const auto prof = gaussian_profile(g, 1.0);
        SpectralField f = cosine(g, 1, 0, prof);
        f.axpy(1.0, cosine(g, 2, 3, prof));
        const SpectralField u = apply_model_operator(f, ModelKind::D0);
        const SpectralField d2 = vertical_derivative(u, 2);
        double num = 0.0;
        double den = 0.0;
        for (int k = 0; k < nz; ++k) {
            for (std::size_t i = 0; i < g.nxy(); ++i) {
                const int m1 = static_cast<int>(i) / g.ny;
                const int m2 = static_cast<int>(i) % g.ny;
                const double a2 = std::pow(g.modulus(m1, m2), 2);
                const cplx r = a2 * u.at(0, k, i) - d2.at(0, k, i) - f.at(0, k, i);
                num = std::max(num, std::abs(r));
                den = std::max(den, std::abs(f.at(0, k, i)));
            }
        }
        return num / den;
    };
    const double r1 = residual(257);
    const double r2 = residual(513);
    CHECK(r1 <= 1e-3);
    CHECK(r1 / r2 >= 3.8);
}

TEST_CASE("composition identities") {
    const SlabGrid g = make_grid(16, 16, kPi / 2, kPi / 2, 385, -12.0, 12.0);
    Rng rng(31);
    const SpectralField f = random_smooth_field(g, 1, rng, 1.0);
    const SpectralField d0 = apply_model_operator(f, ModelKind::D0);
    CHECK(testing::bitwise_equal(apply_model_operator(f, ModelKind::Dt0), apply_model_operator(d0, ModelKind::D0)));
    CHECK(testing::bitwise_equal(apply_model_operator(f, ModelKind::Dt1), apply_model_operator(d0, ModelKind::D1)));
    const SpectralField d1 = apply_model_operator(f, ModelKind::D1);
    const SpectralField a = apply_model_operator(d1, ModelKind::D0);
    const SpectralField b = apply_model_operator(d0, ModelKind::D1);
    CHECK(testing::rel_max_diff(a, b) <= 1e-12);
}

TEST_CASE("mean content is rejected") {
    const SlabGrid g = column_grid(17, 2.0);
    SpectralField f(g, 1);
    f.at(0, 8, 0) = 1.0;
    CHECK_THROWS_AS((void)apply_model_operator(f, ModelKind::D0), PreconditionError);
}

TEST_CASE("boundary leakage triggers a warning") {
    const SlabGrid g = column_grid(33, 2.0);
    const SpectralField f = cosine(g, 1, 0, constant_profile(g));
    QuietWarnings quiet;
    (void)apply_model_operator(f, ModelKind::D0);
    CHECK(quiet.count == 1);
    (void)apply_model_operator(f, ModelKind::D0, false);
    CHECK(quiet.count == 1);
    CHECK(check_vertical_boundary(f, "test") == doctest::Approx(1.0));
}

TEST_CASE("operators are linear and map zero to zero") {
    const SlabGrid g = make_grid(16, 16, 2 * kPi, 2 * kPi, 129, -8.0, 8.0);
    Rng rng(32);
    const SpectralField a = random_smooth_field(g, 1, rng, 1.0);
    const SpectralField b = random_smooth_field(g, 1, rng, 1.0);
    SpectralField mix = a;
    mix.scale(0.5);
    mix.axpy(-2.0, b);
    for (ModelKind kind : {ModelKind::D0, ModelKind::D1, ModelKind::Dt0, ModelKind::Dt1}) {
        SpectralField expected = apply_model_operator(a, kind);
        expected.scale(0.5);
        expected.axpy(-2.0, apply_model_operator(b, kind));
        CHECK(testing::rel_max_diff(apply_model_operator(mix, kind), expected) <= 1e-13);
        CHECK(apply_model_operator(SpectralField(g, 1), kind).max_abs() == 0.0);
    }
}

TEST_CASE("parity of D0 and D1") {
    const SlabGrid g = make_grid(8, 8, 2 * kPi, 2 * kPi, 257, -8.0, 8.0);
    const auto even = gaussian_profile(g, 1.0);
    std::vector<double> odd(even.size());
    for (int k = 0; k < g.nz; ++k) {
        odd[k] = g.z(k) * even[k];
    }
    const std::size_t idx = g.flat(1, 2);
    auto reflect_defect = [&](const SpectralField& u, double sign) {
        double worst = 0.0;
        for (int k = 0; k < g.nz; ++k) {
            worst = std::max(worst, std::abs(u.at(0, k, idx) - sign * u.at(0, g.nz - 1 - k, idx)));
        }
        return worst / u.max_abs();
    };
    const SpectralField fe = cosine(g, 1, 2, even);
    const SpectralField fo = cosine(g, 1, 2, odd);
    CHECK(reflect_defect(apply_model_operator(fe, ModelKind::D0), 1.0) <= 1e-13);
    CHECK(reflect_defect(apply_model_operator(fo, ModelKind::D0), -1.0) <= 1e-13);
    CHECK(reflect_defect(apply_model_operator(fe, ModelKind::D1), -1.0) <= 1e-13);
    CHECK(reflect_defect(apply_model_operator(fo, ModelKind::D1), 1.0) <= 1e-13);
}

TEST_CASE("D0 acts like the Poisson symbol on a windowed wave") {
    const SlabGrid g = make_grid(8, 8, 2 * kPi, 2 * kPi, 769, -24.0, 24.0);
    const double zeta = 2.0;
    std::vector<double> prof(static_cast<std::size_t>(g.nz));
    for (int k = 0; k < g.nz; ++k) {
        prof[k] = std::cos(zeta * g.z(k)) * std::exp(-g.z(k) * g.z(k) / 18.0);
    }
    const SpectralField f = cosine(g, 1, 0, prof);
    const SpectralField u = apply_model_operator(f, ModelKind::D0);
    const std::size_t idx = g.flat(1, 0);
    const double ratio = u.at(0, g.nz / 2, idx).real() / f.at(0, g.nz / 2, idx).real();
    CHECK(ratio == doctest::Approx(1.0 / (1.0 + zeta * zeta)).epsilon(0.05));
}

TEST_CASE("D0 preserves nonnegativity") {
    const SlabGrid g = make_grid(8, 8, 2 * kPi, 2 * kPi, 257, -8.0, 8.0);
    const auto bump = compact_bump_profile(g, 2.0, 1.0);
    const auto gauss = gaussian_profile(g, 0.7, -2.0);
    for (const auto& prof : {bump, gauss}) {
        SpectralField f(g, 1);
        const std::size_t idx = g.flat(0, 3);
        for (int k = 0; k < g.nz; ++k) {
            f.at(0, k, idx) = prof[k];
            f.at(0, k, g.conjugate_index(idx)) = prof[k];
        }
        const SpectralField u = apply_model_operator(f, ModelKind::D0);
        double lowest = 0.0;
        for (int k = 0; k < g.nz; ++k) {
            lowest = std::min(lowest, u.at(0, k, idx).real());
        }
        CHECK(lowest >= 0.0);
    }
}

TEST_CASE("kind names round-trip") {
    for (ModelKind kind : {ModelKind::D0, ModelKind::D1, ModelKind::Dt0, ModelKind::Dt1}) {
        CHECK(parse_model_kind(to_string(kind)) == kind);
    }
    CHECK_THROWS_AS((void)parse_model_kind("D2"), ParameterError);
}

TEST_CASE("least-squares line") {
    const std::vector<double> x{0, 1, 2, 3};
    const std::vector<double> y{1, 3, 5, 7};
    const LinearFit fit = fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(1.0));
    CHECK(fit.residual == doctest::Approx(0.0));
    CHECK(fit.points == 4);
}

TEST_CASE("kernel report reproduces the one-derivative gain of D1") {
    const SlabGrid g = make_grid(64, 64, 2 * kPi, 2 * kPi, 257, -8.0, 8.0);
    const DyadicLadder ladder = build_ladder(g);
    KernelReportConfig cfg;
    cfg.kind = ModelKind::D1;
    const KernelReport rep = kernel_estimate_report(ladder, cfg);
    CHECK(rep.j.size() == 5);
    CHECK(rep.fit.slope == doctest::Approx(-1.0).epsilon(0.15));
    CHECK_FALSE(rep.split);
    const std::string csv = kernel_report_csv(rep);
    CHECK(csv.rfind("j,ratio,fitted_slope\n", 0) == 0);
}

TEST_CASE("kernel report range checks") {
    const SlabGrid g = make_grid(16, 16, 2 * kPi, 2 * kPi, 65, -8.0, 8.0);
    const DyadicLadder ladder = build_ladder(g);
    KernelReportConfig cfg;
    cfg.j_lo = 0;
    cfg.j_hi = 2;
    CHECK_THROWS_AS((void)kernel_estimate_report(ladder, cfg), IndexError);
    cfg.j_hi = 9;
    CHECK_THROWS_AS((void)kernel_estimate_report(ladder, cfg), IndexError);
}
