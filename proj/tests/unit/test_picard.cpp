#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "stokeslab/decay.hpp"
#include "stokeslab/error.hpp"
#include "stokeslab/fft.hpp"
#include "stokeslab/ladder.hpp"
#include "stokeslab/picard.hpp"
#include "stokeslab/product.hpp"
#include "stokeslab/synthetic.hpp"
#include "support.hpp"

using namespace stokeslab;
using testing::kPi;

namespace {

SlabGrid slab(int n, int nz, double period = 2 * kPi, double half = 8.0) {
    return make_grid(n, n, period, period, nz, -half, half);
}

/// A few fixed modes in several components; identical coefficients on any grid
/// of the same period.
ForcingTensor fixed_forcing(const SlabGrid& g) {
    const double w = 1.0 * (g.z_max / 8.0);
    const auto prof = gaussian_profile(g, w);
    ForcingTensor F(g);
    const int modes[4][4] = {{1, 3, 1, 0}, {2, 3, 0, 1}, {1, 1, 1, 1}, {3, 2, 1, -2}};
    for (const auto& m : modes) {
        SpectralField s = F.get(m[0], m[1]);
        add_cosine_mode(s, 0, m[2], m[3], 1.0, prof);
        F.set(m[0], m[1], s);
    }
    return F;
}

SolverConfig solver() {
    SolverConfig cfg;
    cfg.eta = 100.0;
    return cfg;
}

/// Rescales F so the hypothesis sum equals fraction * eta.
ForcingTensor scaled_to(const DyadicLadder& ladder, ForcingTensor F, const SolverConfig& cfg, double fraction) {
    const auto base = hypothesis_check(ladder, F, cfg, 0.25, Exponent::finite(2.0), 0.0);
    F.field().scale(fraction * cfg.eta / base.sum);
    return F;
}

ForcingTensor times(ForcingTensor F, double a) {
    F.field().scale(a);
    return F;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

TEST_CASE("nonlinear term is symmetric") {
    const SlabGrid g = slab(16, 33);
    Rng rng(51);
    const VelocityField u(random_smooth_field(g, 3, rng, 1.0));
    for (bool dealias : {true, false}) {
        const ForcingTensor N = nonlinear_term(u, dealias);
        for (int j = 1; j <= 3; ++j) {
            for (int k = 1; k <= 3; ++k) {
                CHECK(testing::bitwise_equal(N.get(j, k), N.get(k, j)));
            }
        }
    }
}

TEST_CASE("nonlinear term of a single mode") {
    const SlabGrid g = slab(16, 9);
    const auto prof = gaussian_profile(g, 1.0);
    VelocityField u(g);
    SpectralField s(g, 1);
    add_cosine_mode(s, 0, 1, 0, 1.0, prof);
    u.set(1, s);
    const ForcingTensor N = nonlinear_term(u);
    const std::size_t plus = g.flat(2, 0);
    const std::size_t minus = g.flat(g.nx - 2, 0);
    for (int k = 0; k < g.nz; ++k) {
        const double p = prof[static_cast<std::size_t>(k)];
        CHECK(std::abs(N.get(1, 1).at(0, k, plus) - cplx(0.25 * p * p, 0.0)) <= 1e-15);
        CHECK(std::abs(N.get(1, 1).at(0, k, minus) - cplx(0.25 * p * p, 0.0)) <= 1e-15);
        CHECK(N.get(1, 1).at(0, k, 0) == cplx(0.0, 0.0));
    }
    SpectralField rest = N.get(1, 1);
    for (int k = 0; k < g.nz; ++k) {
        rest.plane(0, k)[plus] = 0.0;
        rest.plane(0, k)[minus] = 0.0;
    }
    CHECK(rest.max_abs() <= 1e-15);
    for (int j = 1; j <= 3; ++j) {
        for (int k = 1; k <= 3; ++k) {
            if (j != 1 || k != 1) {
                CHECK(N.get(j, k).max_abs() == 0.0);
            }
        }
    }
}

TEST_CASE("nonlinear term vanishes above the two-thirds cutoff") {
    const SlabGrid g = slab(16, 5);
    Rng rng(52);
    const VelocityField u(random_nodewise_field(g, 3, rng, false));
    const ForcingTensor N = nonlinear_term(u);
    const auto mask = dealias_mask(g);
    for (int c = 0; c < 9; ++c) {
        for (int k = 0; k < g.nz; ++k) {
            for (std::size_t i = 0; i < g.nxy(); ++i) {
                if (!mask[i]) {
                    CHECK(N.field().at(c, k, i) == cplx(0.0, 0.0));
                }
            }
        }
    }
}

TEST_CASE("hypothesis check of zero forcing") {
    const SlabGrid g = slab(16, 65);
    const DyadicLadder ladder = build_ladder(g);
    const HypothesisReport rep = hypothesis_check(ladder, ForcingTensor(g), solver(), 0.25, Exponent::finite(2.0), 0);
    CHECK(rep.pass);
    CHECK(rep.sum == 0.0);
    CHECK(rep.norms.size() == 5);
    for (const auto& n : rep.norms) {
        CHECK(n.value == 0.0);
    }
}

TEST_CASE("hypothesis index window") {
    const SlabGrid g = slab(16, 65);
    const DyadicLadder ladder = build_ladder(g);
    const ForcingTensor F(g);
    auto message = [&](double sigma, double p, double delta) {
        try {
            (void)hypothesis_check(ladder, F, solver(), sigma, Exponent::finite(p), delta);
        } catch (const PreconditionError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(0.6, 2.0, 0.0).find("σ ≥ 1/2") != std::string::npos);
    CHECK(message(0.0, 2.0, 0.0).find("σ") != std::string::npos);
    CHECK(message(0.25, 1.5, 0.0).find("4/(3−2σ)") != std::string::npos);
    CHECK_FALSE(message(0.25, 2.0, -1.0).empty());
    CHECK(message(0.25, 2.0, 0.0).empty());
    SolverConfig bad = solver();
    bad.eta = 0.0;
    CHECK_THROWS_AS((void)hypothesis_check(ladder, F, bad, 0.25, Exponent::finite(2.0), 0.0), ValidationError);
}

TEST_CASE("hypothesis is monotone in amplitude") {
    const SlabGrid g = slab(16, 129);
    const DyadicLadder ladder = build_ladder(g);
    ForcingTensor F(g);
    SpectralField s(g, 1);
    add_cosine_mode(s, 0, 1, 0, 1.0, compact_bump_profile(g, 2.0));
    F.set(1, 3, s);
    const SolverConfig cfg = solver();
    const ForcingTensor at = scaled_to(ladder, F, cfg, 0.9);
    const auto pass = hypothesis_check(ladder, at, cfg, 0.25, Exponent::finite(2.0), 0.0);
    CHECK(pass.pass);
    CHECK(pass.sum == doctest::Approx(0.9 * cfg.eta).epsilon(1e-12));
    const auto fail = hypothesis_check(ladder, times(at, 2.0), cfg, 0.25, Exponent::finite(2.0), 0.0);
    CHECK_FALSE(fail.pass);
    CHECK(fail.sum == doctest::Approx(2.0 * pass.sum).epsilon(1e-12));
    const auto half = hypothesis_check(ladder, times(at, 0.5), cfg, 0.25, Exponent::finite(2.0), 0.0);
    CHECK(half.pass);
}

TEST_CASE("solver config validation") {
    SolverConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.max_iter = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.max_iter = 5;
    cfg.tol_rel = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    CHECK(to_string(SolveStatus::converged) == "converged");
    CHECK(to_string(SolveStatus::diverged) == "diverged");
}

TEST_CASE("zero forcing converges at the first iterate") {
    const SlabGrid g = slab(16, 65);
    const DyadicLadder ladder = build_ladder(g);
    const SolveResult res = picard_solve(ladder, ForcingTensor(g), solver());
    CHECK(res.converged);
    CHECK(res.status == SolveStatus::converged);
    CHECK(res.trace.records.size() == 2);
    CHECK(res.u.field().max_abs() == 0.0);
}

TEST_CASE("small forcing converges and its correction is quadratic") {
    const SlabGrid g = slab(16, 129);
    const DyadicLadder ladder = build_ladder(g);
    const SolverConfig cfg = solver();
    const ForcingTensor f = scaled_to(ladder, fixed_forcing(g), cfg, 0.5);
    auto correction = [&](const ForcingTensor& F, double& linear) {
        const SolveResult res = picard_solve(ladder, F, cfg);
        REQUIRE(res.converged);
        const VelocityField u1 = apply_D(F);
        linear = besov_norm(ladder, u1.field(), cfg.monitor);
        return besov_norm(ladder, difference(res.u.field(), u1.field()), cfg.monitor);
    };
    double l_full = 0.0;
    double l_half = 0.0;
    const double c_full = correction(f, l_full);
    const double c_half = correction(times(f, 0.5), l_half);
    CHECK(c_full > 0.0);
    CHECK(c_full / c_half >= 3.5);
    CHECK(c_full / c_half <= 4.6);
    const double k_full = c_full / (l_full * l_full);
    const double k_half = c_half / (l_half * l_half);
    CHECK(k_full / k_half == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("converged solve: trace, fixed point and residual") {
    const SlabGrid g = slab(16, 257);
    const DyadicLadder ladder = build_ladder(g);
    SolverConfig cfg = solver();
    cfg.tol_rel = 1e-10;
    const ForcingTensor f = scaled_to(ladder, fixed_forcing(g), cfg, 0.5);
    const SolveResult res = picard_solve(ladder, f, cfg);
    REQUIRE(res.converged);
    CHECK(res.trace.records.size() <= static_cast<std::size_t>(cfg.max_iter) + 1);
    for (std::size_t i = 3; i < res.trace.records.size(); ++i) {
        CHECK(std::isfinite(res.trace.records[i].ratio));
        CHECK(res.trace.records[i].ratio <= 0.9);
    }
    CHECK(res.trace.records.back().ratio <= 0.9);
    CHECK(fixed_point_defect(ladder, res.u, f, cfg) <= 10.0 * cfg.tol_rel);

    const ResidualReport solved = ns_residual(res.u, f);
    CHECK(solved.rel_div <= 1e-8);
    CHECK(solved.rel_curl <= 5e-3);
    const ResidualReport linear = ns_residual(apply_D(f), f);
    CHECK(linear.rel_curl > solved.rel_curl);

    const std::string csv = trace_csv(res.trace);
    CHECK(csv.rfind("iter,norm,update,ratio\n", 0) == 0);
    CHECK(csv.find("wall") == std::string::npos);
}

TEST_CASE("large forcing is flagged as non-convergent") {
    const SlabGrid g = slab(16, 129);
    const DyadicLadder ladder = build_ladder(g);
    const SolverConfig cfg = solver();
    const ForcingTensor f = scaled_to(ladder, fixed_forcing(g), cfg, 0.5);
    const SolveResult res = picard_solve(ladder, times(f, 200.0), cfg);
    CHECK_FALSE(res.converged);
    CHECK(res.status != SolveStatus::converged);
    CHECK_FALSE(res.reason.empty());
}

TEST_CASE("halving a passing forcing keeps the solve converged") {
    const SlabGrid g = slab(16, 129);
    const DyadicLadder ladder = build_ladder(g);
    const SolverConfig cfg = solver();
    const ForcingTensor f = scaled_to(ladder, fixed_forcing(g), cfg, 0.5);
    const ForcingTensor h = times(f, 0.5);
    CHECK(hypothesis_check(ladder, h, cfg, 0.25, Exponent::finite(2.0), 0.0).pass);
    CHECK(picard_solve(ladder, h, cfg).converged);
}

TEST_CASE("solve is equivariant under the scaling") {
    const SlabGrid g = slab(16, 129);
    const SlabGrid gl = slab(16, 129, kPi, 4.0);
    const DyadicLadder ladder = build_ladder(g);
    const DyadicLadder ladder_l = build_ladder(gl);
    const SolverConfig cfg = solver();
    const ForcingTensor f = scaled_to(ladder, fixed_forcing(g), cfg, 0.5);
    ForcingTensor fl(gl);
    for (std::size_t i = 0; i < f.field().data().size(); ++i) {
        fl.field().data()[i] = 4.0 * f.field().data()[i];
    }
    const SolveResult base = picard_solve(ladder, f, cfg);
    const SolveResult scaled = picard_solve(ladder_l, fl, cfg);
    REQUIRE(base.converged);
    REQUIRE(scaled.converged);
    VelocityField expected(gl);
    for (std::size_t i = 0; i < base.u.field().data().size(); ++i) {
        expected.field().data()[i] = 2.0 * base.u.field().data()[i];
    }
    const BesovIndex critical{0.5, Exponent::finite(2.0), Exponent::finite(1.0), Exponent::finite(2.0)};
    const double n_base = besov_norm(ladder, base.u.field(), critical);
    const double n_scaled = besov_norm(ladder_l, scaled.u.field(), critical);
    CHECK(n_scaled == doctest::Approx(n_base).epsilon(0.02));
    const double d = besov_norm(ladder_l, difference(scaled.u.field(), expected.field()), critical);
    CHECK(d <= 0.02 * n_scaled);
}

TEST_CASE("supercritical report") {
    auto ratio = [](int n, int nz) {
        const SlabGrid g = slab(n, nz);
        const DyadicLadder ladder = build_ladder(g);
        const SolverConfig cfg = solver();
        const ForcingTensor f = scaled_to(ladder, fixed_forcing(g), cfg, 0.5);
        const SolveResult res = picard_solve(ladder, f, cfg);
        REQUIRE(res.converged);
        return supercritical_report(ladder, res.u, f, 0.25, Exponent::finite(2.0), Exponent::finite(1.0));
    };
    const SupercriticalReport coarse = ratio(16, 129);
    const SupercriticalReport fine = ratio(32, 257);
    CHECK(std::isfinite(coarse.ratio));
    CHECK(coarse.ratio > 0.0);
    CHECK(std::isfinite(coarse.ratio_inf));
    const double growth = std::max(coarse.ratio, fine.ratio) / std::min(coarse.ratio, fine.ratio);
    CHECK(growth <= 2.0);

    const SlabGrid g = slab(16, 65);
    const DyadicLadder ladder = build_ladder(g);
    Rng rng(53);
    const ForcingTensor f(random_low_mode_field(g, 9, rng, 3, gaussian_profile(g, 1.0)));
    const SupercriticalReport zero =
        supercritical_report(ladder, VelocityField(g), f, 0.25, Exponent::finite(2.0), Exponent::finite(1.0));
    CHECK(zero.ratio == 0.0);
    CHECK(zero.norm_f > 0.0);
    CHECK_THROWS_AS((void)supercritical_report(ladder, VelocityField(g), f, 0.25, Exponent::finite(3.9),
                                               Exponent::finite(1.0)),
                    PreconditionError);
    CHECK_THROWS_AS((void)supercritical_report(ladder, VelocityField(g), f, 1.0, Exponent::finite(1.5),
                                               Exponent::finite(1.0)),
                    PreconditionError);
}

TEST_CASE("ns residual of zero fields") {
    const SlabGrid g = slab(16, 65);
    const ResidualReport r = ns_residual(VelocityField(g), ForcingTensor(g));
    CHECK(r.rel_div == 0.0);
    CHECK(r.rel_curl == 0.0);
}

TEST_CASE("decay fit of an exact power law") {
    const SlabGrid g = make_grid(8, 8, 2 * kPi, 2 * kPi, 801, -40.0, 40.0);
    std::vector<double> m(static_cast<std::size_t>(g.nz));
    for (int k = 0; k < g.nz; ++k) {
        m[static_cast<std::size_t>(k)] = std::pow(1.0 + g.z(k) * g.z(k), -0.2);
    }
    const DecayReport rep = decay_fit(g, m, 0.4, DecayWindow{});
    CHECK(rep.sigma_fit == doctest::Approx(0.4).epsilon(0.01 / 0.4));
    CHECK(rep.positive.sigma == doctest::Approx(0.4).epsilon(1e-10));
    CHECK(rep.negative.sigma == doctest::Approx(0.4).epsilon(1e-10));
    CHECK_FALSE(rep.curved);
    CHECK(rep.positive.samples.size() >= 8);
    CHECK(rep.sigma_target == 0.4);
}

TEST_CASE("decay fit of an exponential is steep and curved") {
    const SlabGrid g = make_grid(8, 8, 2 * kPi, 2 * kPi, 401, -20.0, 20.0);
    std::vector<double> m(static_cast<std::size_t>(g.nz));
    std::vector<double> x;
    std::vector<double> y;
    for (int k = 0; k < g.nz; ++k) {
        const double z = g.z(k);
        m[static_cast<std::size_t>(k)] = std::exp(-std::abs(z));
        const double br = std::sqrt(1.0 + z * z);
        if (z > 0.0 && br >= 4.0 && br <= 8.0) {
            x.push_back(std::log(br));
            y.push_back(-std::abs(z));
        }
    }
    const DecayReport rep = decay_fit(g, m, 0.25, DecayWindow{4.0, 8.0});
    CHECK(rep.sigma_fit > 2.0);
    CHECK(rep.positive.sigma == doctest::Approx(-least_squares_slope(x, y)).epsilon(1e-10));
    CHECK(rep.curved);
}

TEST_CASE("decay fit of a constant field") {
    const SlabGrid g = make_grid(8, 8, 2 * kPi, 2 * kPi, 401, -40.0, 40.0);
    SpectralField u(g, 3);
    add_cosine_mode(u, 1, 1, 2, 1.0, constant_profile(g));
    const DecayReport rep = decay_fit(u, 0.25, DecayWindow{});
    CHECK(std::abs(rep.sigma_fit) <= 0.01);
    const std::string csv = decay_csv(rep);
    CHECK(csv.rfind("branch,z,bracket,sup_abs_u\n", 0) == 0);
}

TEST_CASE("horizontal sup is the pointwise maximum of the magnitude") {
    const SlabGrid g = make_grid(8, 8, 2 * kPi, 2 * kPi, 5, -1.0, 1.0);
    Rng rng(54);
    const PhysicalField p = random_physical(g, 3, rng);
    const auto m = horizontal_sup(p);
    for (int k = 0; k < g.nz; ++k) {
        double best = 0.0;
        for (int i1 = 0; i1 < g.nx; ++i1) {
            for (int i2 = 0; i2 < g.ny; ++i2) {
                const double a = p.at(0, k, i1, i2);
                const double b = p.at(1, k, i1, i2);
                const double c = p.at(2, k, i1, i2);
                best = std::max(best, std::sqrt(a * a + b * b + c * c));
            }
        }
        CHECK(m[static_cast<std::size_t>(k)] == doctest::Approx(best).epsilon(1e-15));
    }
}

TEST_CASE("decay window errors") {
    const SlabGrid g = make_grid(8, 8, 2 * kPi, 2 * kPi, 401, -20.0, 20.0);
    const std::vector<double> m(static_cast<std::size_t>(g.nz), 1.0);
    CHECK_THROWS_AS((void)decay_fit(g, m, 0.25, DecayWindow{6.0, 19.0}), ParameterError);
    CHECK_THROWS_AS((void)decay_fit(g, m, 0.25, DecayWindow{5.0, 4.0}), ParameterError);
    CHECK_THROWS_AS((void)decay_fit(g, m, 0.25, DecayWindow{4.0, 4.2}), ParameterError);
    const SlabGrid coarse = make_grid(8, 8, 2 * kPi, 2 * kPi, 21, -20.0, 20.0);
    const std::vector<double> mc(21, 1.0);
    CHECK_THROWS_AS((void)decay_fit(coarse, mc, 0.25, DecayWindow{4.0, 8.0}), ParameterError);
    CHECK_THROWS_AS((void)decay_fit(g, mc, 0.25, DecayWindow{4.0, 8.0}), ShapeError);
}
