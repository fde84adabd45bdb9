#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stokeslab/besov.hpp"
#include "stokeslab/field.hpp"

namespace stokeslab {

enum class KernelKind {
    even,  ///< e^{-a|x|}
    odd,   ///< sgn(x) e^{-a|x|}, sgn(0) = 0
};

enum class ModelKind { D0, D1, Dt0, Dt1 };

[[nodiscard]] std::string to_string(ModelKind kind);
/// Parses "D0", "D1", "Dt0", "Dt1"; throws ParameterError otherwise.
[[nodiscard]] ModelKind parse_model_kind(const std::string& text);

/// Exact segment integrals of e^{-a|x-y|} against the hat functions of a
/// uniform node set with spacing h.
class ExpConvolutionPlan {
public:
    /// Throws ParameterError when a <= 0 or h <= 0.
    ExpConvolutionPlan(double a, double h);

    [[nodiscard]] double rate() const noexcept { return a_; }
    [[nodiscard]] double decay() const noexcept { return decay_; }
    /// Weight of the near node and of the far node of one segment.
    [[nodiscard]] double near_weight() const noexcept { return near_; }
    [[nodiscard]] double far_weight() const noexcept { return far_; }

    /// out(x_i) = integral over the node range of K(x_i - y) * interp(in)(y).
    void apply(std::span<const cplx> in, std::span<cplx> out, KernelKind kind) const;

private:
    double a_;
    double decay_;
    double near_;
    double far_;
};

/// One-dimensional convolution of a nodal profile with the kernel.
[[nodiscard]] std::vector<cplx> exp_convolve(std::span<const cplx> profile, double a, double dz, KernelKind kind);

/// D0 = (1/(2a)) even, D1 = -(1/2) odd, Dt0 = D0 D0, Dt1 = D1 D0 applied
/// per nonzero horizontal frequency of a scalar field.
///
/// Throws PreconditionError when the field has mean (xi_h = 0) content.
/// With check_boundary, warns when the input is not negligible at the
/// vertical ends.
[[nodiscard]] SpectralField apply_model_operator(const SpectralField& g, ModelKind kind, bool check_boundary = true);

/// Vertical correction g + (11/720) delta^4 g of the nodal data, applied
/// on nodes with a full five-point neighbourhood.
[[nodiscard]] SpectralField prefilter(const SpectralField& g);

/// Moments of e^{-x t} t^n over [0, 1] for n = 0..3.
[[nodiscard]] std::array<double, 4> exp_moments(double x);

/// Exact integrals of e^{-a s} against the four cubic cardinal functions of
/// one segment. offset is the segment's index inside its four-node stencil
/// (0 at the first segment, 1 inside, 2 at the last). causal integrates
/// e^{-a(h - s)}, anti integrates e^{-a s}, both over [0, h].
struct CubicSegmentWeights {
    std::array<double, 4> causal{};
    std::array<double, 4> anti{};
};
[[nodiscard]] CubicSegmentWeights cubic_segment_weights(double a, double h, int offset);

/// Convolution of every frequency column with one kernel kind, scaled per
/// frequency by scale(a).
enum class KernelScale { d0, d1 };
[[nodiscard]] SpectralField convolve_columns(const SpectralField& g, KernelKind kind, KernelScale scale);

/// Warns when the magnitude at the first or last node exceeds the boundary
/// threshold relative to the field's peak. Returns the relative magnitude.
double check_vertical_boundary(const SpectralField& g, const std::string& context);

/// Vertical shape of the random block inputs of the kernel report.
enum class ProfileFamily {
    modulated,  ///< exp(-z^2/(2W^2)) cos(kappa 2^j z + phase)
    dilated,    ///< exp(-(2^j z)^2/(2 W^2)) (width W 2^{-j})
};

struct KernelReportConfig {
    ModelKind kind = ModelKind::D0;
    int j_lo = 0;
    int j_hi = 4;
    Exponent p = Exponent::finite(2.0);
    Exponent r = Exponent::finite(2.0);
    int trials = 10;
    std::uint64_t seed = 7;
    double sigma = 0.0;
    int N0 = 0;
    ProfileFamily profile = ProfileFamily::modulated;
    double width = 1.0;
    double kappa = 0.5;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// RMS of the fit residuals.
    double residual = 0.0;
    int points = 0;
};

/// Least-squares line through (x, y).
[[nodiscard]] LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct KernelReport {
    ModelKind kind = ModelKind::D0;
    std::vector<int> j;
    /// Geometric mean over trials of ||Delta_j D g|| / ||Delta_j g||.
    std::vector<double> ratio;
    LinearFit fit;
    bool split = false;
    LinearFit low;   ///< blocks j <= N0
    LinearFit high;  ///< blocks j >= N0 - 1
};

/// Measures the block gain of a model operator and fits log2(ratio) vs j.
///
/// Throws IndexError when the block range has fewer than 4 blocks or is
/// not resolved by the ladder.
[[nodiscard]] KernelReport kernel_estimate_report(const DyadicLadder& ladder, const KernelReportConfig& cfg);

[[nodiscard]] std::string kernel_report_csv(const KernelReport& report);

}  // namespace stokeslab
