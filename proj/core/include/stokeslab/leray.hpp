#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stokeslab/besov.hpp"
#include "stokeslab/field.hpp"

namespace stokeslab {

/// 3x3 tensor of scalar spectral fields F_jk, stored as one 9-component
/// field with component 3*(j-1) + (k-1).
class ForcingTensor {
public:
    ForcingTensor() = default;
    explicit ForcingTensor(const SlabGrid& grid) : data_(grid, 9) {}
    /// Wraps a 9-component field; throws ShapeError otherwise.
    explicit ForcingTensor(SpectralField data);

    [[nodiscard]] const SlabGrid& grid() const noexcept { return data_.grid(); }
    [[nodiscard]] static int index(int j, int k) noexcept { return 3 * (j - 1) + (k - 1); }

    /// Component F_jk with 1-based indices.
    [[nodiscard]] SpectralField get(int j, int k) const { return data_.component(index(j, k)); }
    void set(int j, int k, const SpectralField& s) { data_.set_component(index(j, k), s); }

    [[nodiscard]] const SpectralField& field() const noexcept { return data_; }
    [[nodiscard]] SpectralField& field() noexcept { return data_; }

    /// phi times the identity tensor.
    [[nodiscard]] static ForcingTensor isotropic(const SpectralField& phi);

private:
    SpectralField data_;
};

/// Velocity (u1, u2, u3) as one 3-component field.
class VelocityField {
public:
    VelocityField() = default;
    explicit VelocityField(const SlabGrid& grid) : data_(grid, 3) {}
    explicit VelocityField(SpectralField data);

    [[nodiscard]] const SlabGrid& grid() const noexcept { return data_.grid(); }
    [[nodiscard]] SpectralField get(int i) const { return data_.component(i - 1); }
    void set(int i, const SpectralField& s) { data_.set_component(i - 1, s); }

    [[nodiscard]] const SpectralField& field() const noexcept { return data_; }
    [[nodiscard]] SpectralField& field() noexcept { return data_; }

private:
    SpectralField data_;
};

/// d/dx_axis for axis 1, 2 (spectral) or 3 (finite differences).
[[nodiscard]] SpectralField partial(const SpectralField& f, int axis);

/// (div F)_i = sum_j d_j F_ij.
[[nodiscard]] VelocityField divergence(const ForcingTensor& F);
/// d1 u1 + d2 u2 + d3 u3.
[[nodiscard]] SpectralField divergence(const VelocityField& u);
/// -Delta u = |xi_h|^2 u - d3^2 u, componentwise.
[[nodiscard]] SpectralField minus_laplacian(const SpectralField& f);
[[nodiscard]] VelocityField curl(const VelocityField& v);
/// All nine first derivatives d_j u_i.
[[nodiscard]] SpectralField gradient(const VelocityField& u);

/// L^2(slab) norm via Parseval in x_h and trapezoidal weights in x3.
[[nodiscard]] double l2_norm(const SpectralField& f);

/// The linear solution operator D[F] assembled from the four model operators.
[[nodiscard]] VelocityField apply_D(const ForcingTensor& F, bool check_boundary = true);

struct ResidualReport {
    double rel_div = 0.0;
    double rel_curl = 0.0;
    double norm_u = 0.0;
    double norm_grad_u = 0.0;
    double norm_div_u = 0.0;
    double norm_R = 0.0;
    double norm_curl_R = 0.0;

    /// True when both residuals are within the given tolerances.
    [[nodiscard]] bool passes(double div_tol, double curl_tol) const noexcept {
        return rel_div <= div_tol && rel_curl <= curl_tol;
    }
};

/// Residuals of -Delta u = P div F: rel_div = ||div u|| / ||grad u|| and
/// rel_curl = ||curl R|| / ||R|| with R = -Delta u - div F.
[[nodiscard]] ResidualReport linear_residual(const VelocityField& u, const ForcingTensor& F);

[[nodiscard]] std::string residual_csv(const ResidualReport& r);

struct BoundReportConfig {
    double s = 0.0;
    Exponent p = Exponent::finite(4.0);
    Exponent q = Exponent::finite(1.0);
    Exponent r = Exponent::finite(2.0);
    Exponent p1 = Exponent::finite(4.0);
    Exponent r1 = Exponent::finite(2.0);
    int trials = 25;
    std::uint64_t seed = 11;
    double width = 1.0;
};

struct BoundLevel {
    SlabGrid grid;
    double max_ratio = 0.0;
    std::vector<double> ratios;
};

struct BoundReport {
    std::vector<BoundLevel> levels;
    /// Largest over smallest per-level maximum (1 when fewer than two levels).
    double growth = 1.0;
    [[nodiscard]] bool stable(double factor = 2.0) const noexcept { return growth <= factor; }
};

/// Max of ||D[F]||_{B^s_{p,q;r}} / ||F||_{B^{s-1}_{p,q;r}} over random
/// smooth band-limited F on each grid.
///
/// Only p1 = p, r1 = r is supported; other tuples raise PreconditionError.
[[nodiscard]] BoundReport linear_bound_report(const std::vector<SlabGrid>& grids, const BoundReportConfig& cfg);

}  // namespace stokeslab
