#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stokeslab/ladder.hpp"

namespace stokeslab {

/// Lebesgue exponent in [1, inf], with infinity as an explicit state.
class Exponent {
public:
    /// Throws ParameterError unless 1 <= value < inf.
    static Exponent finite(double value);
    static Exponent infinity() noexcept { return Exponent(); }
    /// Parses "inf" / "infinity" or a number >= 1.
    static Exponent parse(const std::string& text);

    [[nodiscard]] bool is_infinite() const noexcept { return infinite_; }
    /// Finite value; 0 for infinity.
    [[nodiscard]] double value() const noexcept { return value_; }
    /// 1/p, with 1/inf = 0.
    [[nodiscard]] double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }
    /// Hoelder conjugate p' = p/(p-1).
    [[nodiscard]] Exponent conjugate() const noexcept;
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Exponent&, const Exponent&) = default;

private:
    Exponent() noexcept = default;
    explicit Exponent(double v) noexcept : infinite_(false), value_(v) {}

    bool infinite_ = true;
    double value_ = 0.0;
};

enum class Part { full, low, high };

/// Names the norm of B^s_{p,q;r}, optionally weighted by <x3>^sigma and
/// restricted to the low (j <= N0) or high (j >= N0 - 1) blocks.
struct BesovIndex {
    double s = 0.0;
    Exponent p = Exponent::finite(2.0);
    Exponent q = Exponent::finite(1.0);
    Exponent r = Exponent::finite(2.0);
    Part part = Part::full;
    int N0 = 0;
    double sigma = 0.0;

    /// Regularity s = 2/p + 1/r - 1 that makes the norm scale invariant.
    [[nodiscard]] static double critical_s(const Exponent& p, const Exponent& r) noexcept {
        return 2.0 * p.reciprocal() + r.reciprocal() - 1.0;
    }
};

/// <x3>^sigma = (1 + x3^2)^(sigma/2).
[[nodiscard]] double bracket(double z, double sigma) noexcept;

/// f multiplied pointwise by <x3>^sigma (exact per vertical node).
[[nodiscard]] SpectralField bracket_weighted(const SpectralField& f, double sigma);

/// || ||_{L^r_{x3} L^p_{x_h}} with Riemann sums in x_h and trapezoidal
/// weights in x3. Multi-component fields use the pointwise Euclidean
/// magnitude.
[[nodiscard]] double mixed_norm(const PhysicalField& f, const Exponent& p, const Exponent& r);
/// For p = 2 the spectral overload uses Parseval (Hermitian input assumed).
[[nodiscard]] double mixed_norm(const SpectralField& f, const Exponent& p, const Exponent& r);

/// L^r in x3 of a nodal profile of horizontal norms.
[[nodiscard]] double vertical_norm(std::span<const double> per_node, double dz, const Exponent& r);

struct BesovDetail {
    double value = 0.0;
    bool empty_range = false;
    int j_first = 0;
    int j_last = -1;
    /// 2^{js} * ||Delta_j u||_{L^r L^p} for j = j_first .. j_last.
    std::vector<double> weighted_blocks;
};

/// Full evaluation with per-block values. An empty block selection returns
/// 0 with empty_range set and a warning.
[[nodiscard]] BesovDetail besov_norm_detail(const DyadicLadder& ladder, const SpectralField& f,
                                            const BesovIndex& index);
[[nodiscard]] double besov_norm(const DyadicLadder& ladder, const SpectralField& f, const BesovIndex& index);

/// ell^q norm of a sequence in index order.
[[nodiscard]] double lq_norm(std::span<const double> values, const Exponent& q);

}  // namespace stokeslab
