#include "stokeslab/picard.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "stokeslab/error.hpp"
#include "stokeslab/product.hpp"

namespace stokeslab {

void SolverConfig::validate() const {
    if (!(eta > 0.0)) {
        throw ValidationError("eta must be > 0");
    }
    if (max_iter < 1) {
        throw ValidationError("max_iter must be >= 1");
    }
    if (!(tol_rel > 0.0)) {
        throw ValidationError("tol_rel must be > 0");
    }
}

ForcingTensor nonlinear_term(const VelocityField& u, bool dealias) {
    ForcingTensor out(u.grid());
    if (dealias) {
        std::vector<PaddedSamples> pads;
        for (int i = 1; i <= 3; ++i) {
            pads.push_back(padded_samples(u.field(), i - 1));
        }
        for (int j = 1; j <= 3; ++j) {
            for (int k = j; k <= 3; ++k) {
                const SpectralField p = product_from_samples(pads[static_cast<std::size_t>(j - 1)],
                                                             pads[static_cast<std::size_t>(k - 1)], u.grid());
                out.set(j, k, p);
                out.set(k, j, p);
            }
        }
        return out;
    }
    for (int j = 1; j <= 3; ++j) {
        for (int k = j; k <= 3; ++k) {
            const SpectralField p = aliased_product(u.get(j), u.get(k));
            out.set(j, k, p);
            out.set(k, j, p);
        }
    }
    return out;
}

ForcingTensor mild_forcing(const ForcingTensor& f, const VelocityField& u, bool dealias) {
    ForcingTensor F = f;
    F.field().axpy(-1.0, nonlinear_term(u, dealias).field());
    return F;
}

namespace {

void check_decay_window(double sigma, const Exponent& p, double delta) {
    if (!(sigma > 0.0)) {
        throw PreconditionError("σ ≤ 0 (the decay theorem needs 0 < σ < 1/2)");
    }
    if (!(sigma < 0.5)) {
        throw PreconditionError("σ ≥ 1/2 (the decay theorem needs 0 < σ < 1/2)");
    }
    if (!p.is_infinite() && !(p.value() > 4.0 / (3.0 - 2.0 * sigma))) {
        throw PreconditionError("p ≤ 4/(3−2σ) = " + std::to_string(4.0 / (3.0 - 2.0 * sigma)));
    }
    if (!(delta >= 0.0)) {
        throw PreconditionError("δ < 0");
    }
}

BesovIndex index(double s, Exponent p, Exponent q, Exponent r, Part part = Part::full, int N0 = 0,
                 double sigma = 0.0) {
    BesovIndex i;
    i.s = s;
    i.p = p;
    i.q = q;
    i.r = r;
    i.part = part;
    i.N0 = N0;
    i.sigma = sigma;
    return i;
}

}  // namespace

std::vector<NamedNorm> d_norm_parts(const DyadicLadder& ladder, const SpectralField& f, double sigma,
                                    const Exponent& p, double delta, int N0) {
    const double tp = 2.0 * p.reciprocal();
    const auto one = Exponent::finite(1.0);
    const auto inf = Exponent::infinity();
    return {
        {"D_high", besov_norm(ladder, f, index(tp + delta, p, one, inf, Part::high, N0))},
        {"D_weighted_high", besov_norm(ladder, f, index(tp + 1.0, p, one, inf, Part::high, N0, sigma))},
        {"D_weighted_low", besov_norm(ladder, f, index(tp - 1.0 - 2.0 * sigma, p, one, inf, Part::low, N0, sigma))},
    };
}

std::vector<NamedNorm> s_norm_parts(const DyadicLadder& ladder, const SpectralField& u, double sigma,
                                    const Exponent& p, double delta, int N0) {
    const double tp = 2.0 * p.reciprocal();
    const auto one = Exponent::finite(1.0);
    const auto inf = Exponent::infinity();
    return {
        {"S_high", besov_norm(ladder, u, index(tp + 1.0 + delta, p, one, inf, Part::high, N0))},
        {"S_weighted", besov_norm(ladder, u, index(tp, p, one, inf, Part::full, N0, sigma))},
    };
}

HypothesisReport hypothesis_check(const DyadicLadder& ladder, const ForcingTensor& f, const SolverConfig& cfg,
                                  double sigma, const Exponent& p, double delta) {
    check_decay_window(sigma, p, delta);
    cfg.validate();
    const Exponent pc = p.conjugate();
    const double tpc = 2.0 * pc.reciprocal();
    const auto one = Exponent::finite(1.0);
    const auto inf = Exponent::infinity();
    HypothesisReport rep;
    rep.eta = cfg.eta;
    rep.norms.push_back({"B_critical", besov_norm(ladder, f.field(), index(tpc - 1.0, pc, inf, one))});
    rep.norms.push_back({"B_shifted", besov_norm(ladder, f.field(), index(tpc - 1.0 - 2.0 * sigma, pc, inf, one))});
    for (auto& n : d_norm_parts(ladder, f.field(), sigma, p, delta, cfg.N0)) {
        rep.norms.push_back(std::move(n));
    }
    for (const auto& n : rep.norms) {
        rep.sum += n.value;
    }
    rep.pass = rep.sum <= cfg.eta;
    return rep;
}

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::converged:
            return "converged";
        case SolveStatus::not_converged:
            return "not_converged";
        case SolveStatus::diverged:
            return "diverged";
        case SolveStatus::max_iter:
            return "max_iter";
    }
    return "?";
}

SolveResult picard_solve(const DyadicLadder& ladder, const ForcingTensor& f, const SolverConfig& cfg) {
    cfg.validate();
    require_same_grid(ladder.grid(), f.grid(), "picard_solve");
    using clock = std::chrono::steady_clock;

    SolveResult res;
    res.u = VelocityField(f.grid());
    res.trace.records.push_back({0, 0.0, 0.0, 0.0, 0.0});

    double first_norm = 0.0;
    double prev_update = 0.0;
    int rising = 0;
    bool contracting = true;
    for (int n = 1; n <= cfg.max_iter; ++n) {
        const auto start = clock::now();
        VelocityField next = apply_D(mild_forcing(f, res.u, cfg.dealias), n == 1);
        const SpectralField delta = difference(next.field(), res.u.field());
        IterationRecord rec;
        rec.iter = n;
        rec.norm = besov_norm(ladder, next.field(), cfg.monitor);
        rec.update = besov_norm(ladder, delta, cfg.monitor);
        res.u = std::move(next);
        if (n == 1) {
            first_norm = rec.norm;
        } else {
            rec.ratio = prev_update > 0.0 ? rec.update / prev_update : 0.0;
            if (rec.ratio > 0.9) {
                contracting = false;
            }
            rising = rec.ratio >= 1.0 ? rising + 1 : 0;
        }
        prev_update = rec.update;
        rec.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
        res.trace.records.push_back(rec);

        if (!std::isfinite(rec.norm) || rising >= 3 || rec.norm > 10.0 * first_norm) {
            res.status = SolveStatus::diverged;
            std::ostringstream why;
            if (!std::isfinite(rec.norm)) {
                why << "non-finite iterate at iteration " << n;
            } else if (rising >= 3) {
                why << "contraction ratio >= 1 for 3 consecutive iterations (iteration " << n << ")";
            } else {
                why << "iterate norm exceeded 10x the first iterate at iteration " << n;
            }
            res.reason = why.str();
            return res;
        }
        if (first_norm == 0.0 || rec.update <= cfg.tol_rel * first_norm) {
            res.converged = contracting;
            res.status = contracting ? SolveStatus::converged : SolveStatus::not_converged;
            res.reason = contracting ? "relative update below tolerance"
                                     : "tolerance reached but a contraction ratio exceeded 0.9";
            return res;
        }
    }
    res.status = SolveStatus::max_iter;
    res.reason = "max_iter reached before the update tolerance";
    return res;
}

std::string trace_csv(const IterationTrace& trace) {
    std::ostringstream out;
    out.precision(17);
    out << "iter,norm,update,ratio\n";
    for (const auto& r : trace.records) {
        out << r.iter << ',' << r.norm << ',' << r.update << ',' << r.ratio << '\n';
    }
    return out.str();
}

double fixed_point_defect(const DyadicLadder& ladder, const VelocityField& u, const ForcingTensor& f,
                          const SolverConfig& cfg) {
    const VelocityField image = apply_D(mild_forcing(f, u, cfg.dealias), false);
    const double nu = besov_norm(ladder, u.field(), cfg.monitor);
    const double d = besov_norm(ladder, difference(u.field(), image.field()), cfg.monitor);
    return nu > 0.0 ? d / nu : d;
}

ResidualReport ns_residual(const VelocityField& u, const ForcingTensor& f, bool dealias) {
    return linear_residual(u, mild_forcing(f, u, dealias));
}

SupercriticalReport supercritical_report(const DyadicLadder& ladder, const VelocityField& u, const ForcingTensor& f,
                                         double sigma, const Exponent& p, const Exponent& q) {
    if (!(sigma > 0.0 && sigma < 1.0)) {
        throw PreconditionError("supercritical report needs 0 < σ < 1");
    }
    const double bound = 4.0 / (1.0 + sigma);
    if (p.is_infinite() || !(p.value() < bound)) {
        throw PreconditionError("p ≥ 4/(1+σ) = " + std::to_string(bound));
    }
    const double s = 2.0 * p.reciprocal() - 1.0 - sigma;
    const auto one = Exponent::finite(1.0);
    const auto inf = Exponent::infinity();
    SupercriticalReport rep;
    rep.sigma = sigma;
    rep.p = p;
    rep.q = q;
    rep.norm_u = besov_norm(ladder, u.field(), index(s, p, q, inf));
    rep.norm_f = besov_norm(ladder, f.field(), index(s, p, q, one));
    rep.ratio = rep.norm_f > 0.0 ? rep.norm_u / rep.norm_f : 0.0;
    rep.norm_u_inf = besov_norm(ladder, u.field(), index(s, p, inf, inf));
    rep.norm_f_inf = besov_norm(ladder, f.field(), index(s, p, inf, one));
    rep.ratio_inf = rep.norm_f_inf > 0.0 ? rep.norm_u_inf / rep.norm_f_inf : 0.0;
    return rep;
}

}  // namespace stokeslab
