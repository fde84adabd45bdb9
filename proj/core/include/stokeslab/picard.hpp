#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stokeslab/besov.hpp"
#include "stokeslab/leray.hpp"

namespace stokeslab {

struct SolverConfig {
    /// Smallness budget compared against the hypothesis norm sum.
    double eta = 1.0;
    int max_iter = 50;
    double tol_rel = 1e-10;
    /// Norm used for updates and contraction ratios.
    BesovIndex monitor{0.5, Exponent::finite(2.0), Exponent::finite(1.0), Exponent::finite(2.0)};
    int N0 = 0;
    /// Products on the 3/2 grid with two-thirds truncation; plain products otherwise.
    bool dealias = true;

    /// Throws ValidationError for eta <= 0, max_iter < 1 or tol_rel <= 0.
    void validate() const;
};

/// u_j u_k for all nine index pairs, mean removed; (j,k) and (k,j) share
/// one computation.
[[nodiscard]] ForcingTensor nonlinear_term(const VelocityField& u, bool dealias = true);

/// f - u (x) u.
[[nodiscard]] ForcingTensor mild_forcing(const ForcingTensor& f, const VelocityField& u, bool dealias = true);

struct NamedNorm {
    std::string name;
    double value = 0.0;
};

struct HypothesisReport {
    bool pass = false;
    double sum = 0.0;
    double eta = 0.0;
    std::vector<NamedNorm> norms;
};

/// Evaluates the smallness hypothesis of the decay theorem for f:
/// ||f||_{B^{2/p'-1}_{p',inf;1}} + ||f||_{B^{2/p'-1-2 sigma}_{p',inf;1}}
/// + ||f||_{D_{p,sigma,delta}} <= eta.
///
/// Throws PreconditionError outside 0 < sigma < 1/2, 4/(3 - 2 sigma) < p,
/// delta >= 0.
[[nodiscard]] HypothesisReport hypothesis_check(const DyadicLadder& ladder, const ForcingTensor& f,
                                                const SolverConfig& cfg, double sigma, const Exponent& p,
                                                double delta);

/// ||f||_{D_{p,sigma,delta}} and its three parts.
[[nodiscard]] std::vector<NamedNorm> d_norm_parts(const DyadicLadder& ladder, const SpectralField& f, double sigma,
                                                  const Exponent& p, double delta, int N0);
/// ||u||_{S_{p,sigma,delta}} and its two parts.
[[nodiscard]] std::vector<NamedNorm> s_norm_parts(const DyadicLadder& ladder, const SpectralField& u, double sigma,
                                                  const Exponent& p, double delta, int N0);

struct IterationRecord {
    int iter = 0;
    double norm = 0.0;
    double update = 0.0;
    /// update_n / update_{n-1}; 0 for the first two records.
    double ratio = 0.0;
    double wall_seconds = 0.0;
};

enum class SolveStatus { converged, not_converged, diverged, max_iter };

[[nodiscard]] std::string to_string(SolveStatus status);

struct IterationTrace {
    std::vector<IterationRecord> records;
};

struct SolveResult {
    VelocityField u;
    IterationTrace trace;
    bool converged = false;
    SolveStatus status = SolveStatus::max_iter;
    std::string reason;
};

/// Picard iteration u_{n+1} = D[f - u_n (x) u_n] from u_0 = 0.
[[nodiscard]] SolveResult picard_solve(const DyadicLadder& ladder, const ForcingTensor& f, const SolverConfig& cfg);

/// CSV of the trace without wall times.
[[nodiscard]] std::string trace_csv(const IterationTrace& trace);

/// ||u - D[f - u (x) u]|| / ||u|| in the monitored norm.
[[nodiscard]] double fixed_point_defect(const DyadicLadder& ladder, const VelocityField& u, const ForcingTensor& f,
                                        const SolverConfig& cfg);

/// linear_residual(u, f - u (x) u).
[[nodiscard]] ResidualReport ns_residual(const VelocityField& u, const ForcingTensor& f, bool dealias = true);

struct SupercriticalReport {
    double sigma = 0.0;
    Exponent p = Exponent::finite(2.0);
    Exponent q = Exponent::finite(1.0);
    double norm_u = 0.0;      ///< ||u||_{B^{2/p-1-sigma}_{p,q;inf}}
    double norm_f = 0.0;      ///< ||f||_{B^{2/p-1-sigma}_{p,q;1}}
    double ratio = 0.0;
    double norm_u_inf = 0.0;  ///< q = inf variant
    double norm_f_inf = 0.0;
    double ratio_inf = 0.0;
};

/// Throws PreconditionError unless 0 < sigma < 1 and p < 4/(1 + sigma).
[[nodiscard]] SupercriticalReport supercritical_report(const DyadicLadder& ladder, const VelocityField& u,
                                                       const ForcingTensor& f, double sigma, const Exponent& p,
                                                       const Exponent& q);

}  // namespace stokeslab
