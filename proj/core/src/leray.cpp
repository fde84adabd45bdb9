#include "stokeslab/leray.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stokeslab/error.hpp"
#include "stokeslab/ladder.hpp"
#include "stokeslab/model_operators.hpp"
#include "stokeslab/multiplier.hpp"
#include "stokeslab/parallel.hpp"
#include "stokeslab/synthetic.hpp"
#include "stokeslab/vertical.hpp"

namespace stokeslab {

ForcingTensor::ForcingTensor(SpectralField data) : data_(std::move(data)) {
    if (data_.ncomp() != 9) {
        throw ShapeError("forcing tensor needs 9 components (got " + std::to_string(data_.ncomp()) + ")");
    }
}

ForcingTensor ForcingTensor::isotropic(const SpectralField& phi) {
    ForcingTensor F(phi.grid());
    for (int i = 1; i <= 3; ++i) {
        F.set(i, i, phi);
    }
    return F;
}

VelocityField::VelocityField(SpectralField data) : data_(std::move(data)) {
    if (data_.ncomp() != 3) {
        throw ShapeError("velocity field needs 3 components (got " + std::to_string(data_.ncomp()) + ")");
    }
}

SpectralField partial(const SpectralField& f, int axis) {
    if (axis == 3) {
        return vertical_derivative(f, 1);
    }
    return multiply(f, Symbol::partial(axis));
}

namespace {

SpectralField sum(std::initializer_list<SpectralField> terms) {
    auto it = terms.begin();
    SpectralField out = *it;
    for (++it; it != terms.end(); ++it) {
        out.axpy(1.0, *it);
    }
    return out;
}

SpectralField d(const SpectralField& f, int axis) { return multiply(f, Symbol::partial(axis)); }

}  // namespace

VelocityField divergence(const ForcingTensor& F) {
    VelocityField out(F.grid());
    for (int i = 1; i <= 3; ++i) {
        out.set(i, sum({partial(F.get(i, 1), 1), partial(F.get(i, 2), 2), partial(F.get(i, 3), 3)}));
    }
    return out;
}

SpectralField divergence(const VelocityField& u) {
    return sum({partial(u.get(1), 1), partial(u.get(2), 2), partial(u.get(3), 3)});
}

SpectralField minus_laplacian(const SpectralField& f) {
    SpectralField out = multiply(f, Symbol::laplacian_h());
    out.scale(-1.0);
    out.axpy(-1.0, vertical_derivative(f, 2));
    return out;
}

VelocityField curl(const VelocityField& v) {
    VelocityField out(v.grid());
    const auto v1 = v.get(1);
    const auto v2 = v.get(2);
    const auto v3 = v.get(3);
    out.set(1, difference(partial(v3, 2), partial(v2, 3)));
    out.set(2, difference(partial(v1, 3), partial(v3, 1)));
    out.set(3, difference(partial(v2, 1), partial(v1, 2)));
    return out;
}

SpectralField gradient(const VelocityField& u) {
    SpectralField out(u.grid(), 9);
    for (int i = 1; i <= 3; ++i) {
        const auto ui = u.get(i);
        for (int j = 1; j <= 3; ++j) {
            out.set_component(3 * (i - 1) + (j - 1), partial(ui, j));
        }
    }
    return out;
}

double l2_norm(const SpectralField& f) {
    const auto& g = f.grid();
    const auto nz = static_cast<std::size_t>(g.nz);
    std::vector<double> per_node(nz);
    const double area = g.lx * g.ly;
    parallel_for(nz, [&](std::size_t begin, std::size_t end) {
        std::vector<double> terms(g.nxy() * static_cast<std::size_t>(f.ncomp()));
        for (std::size_t k = begin; k < end; ++k) {
            std::size_t at = 0;
            for (int c = 0; c < f.ncomp(); ++c) {
                for (const auto& v : f.plane(c, static_cast<int>(k))) {
                    terms[at++] = std::norm(v);
                }
            }
            per_node[k] = std::sqrt(area * pairwise_sum(terms));
        }
    });
    return vertical_norm(per_node, g.dz(), Exponent::finite(2.0));
}

VelocityField apply_D(const ForcingTensor& F, bool check_boundary) {
    if (check_boundary) {
        check_vertical_boundary(F.field(), "apply_D");
    }
    auto op = [](const SpectralField& g, ModelKind kind) { return apply_model_operator(g, kind, false); };
    const SpectralField F33 = F.get(3, 3);
    const SpectralField lap_F33 = multiply(F33, Symbol::laplacian_h());

    // sum_{j,k<=2} d_k d_j F_kj - Delta_h F33
    SpectralField hh(F.grid(), 1);
    for (int k = 1; k <= 2; ++k) {
        for (int j = 1; j <= 2; ++j) {
            hh.axpy(1.0, d(d(F.get(k, j), j), k));
        }
    }
    hh.axpy(-1.0, lap_F33);

    // sum_{j<=2} d_j (F_j3 + F_3j)
    SpectralField mixed(F.grid(), 1);
    for (int j = 1; j <= 2; ++j) {
        mixed.axpy(1.0, d(F.get(j, 3), j));
        mixed.axpy(1.0, d(F.get(3, j), j));
    }

    VelocityField u(F.grid());
    for (int l = 1; l <= 2; ++l) {
        SpectralField a = sum({d(F.get(l, 1), 1), d(F.get(l, 2), 2)});
        a.axpy(-1.0, d(F33, l));
        SpectralField ul = op(a, ModelKind::D0);
        ul.axpy(1.0, op(F.get(l, 3), ModelKind::D1));
        ul.axpy(1.0, op(d(hh, l), ModelKind::Dt0));
        ul.axpy(1.0, op(d(mixed, l), ModelKind::Dt1));
        u.set(l, ul);
    }

    SpectralField b = sum({d(F.get(1, 3), 1), d(F.get(2, 3), 2)});
    b.scale(-1.0);
    SpectralField c = multiply(mixed, Symbol::laplacian_h());
    c.scale(-1.0);
    SpectralField u3 = op(b, ModelKind::D0);
    u3.axpy(1.0, op(c, ModelKind::Dt0));
    u3.axpy(1.0, op(hh, ModelKind::Dt1));
    u.set(3, u3);
    return u;
}

ResidualReport linear_residual(const VelocityField& u, const ForcingTensor& F) {
    require_same_grid(u.grid(), F.grid(), "linear_residual");
    ResidualReport rep;
    rep.norm_u = l2_norm(u.field());
    rep.norm_grad_u = l2_norm(gradient(u));
    rep.norm_div_u = l2_norm(divergence(u));
    VelocityField R(minus_laplacian(u.field()));
    R.field().axpy(-1.0, divergence(F).field());
    rep.norm_R = l2_norm(R.field());
    rep.norm_curl_R = l2_norm(curl(R).field());
    rep.rel_div = rep.norm_grad_u > 0.0 ? rep.norm_div_u / rep.norm_grad_u : 0.0;
    rep.rel_curl = rep.norm_R > 0.0 ? rep.norm_curl_R / rep.norm_R : 0.0;
    return rep;
}

std::string residual_csv(const ResidualReport& r) {
    std::ostringstream out;
    out.precision(17);
    out << "rel_div,rel_curl,norm_u,norm_grad_u,norm_div_u,norm_R,norm_curl_R\n"
        << r.rel_div << ',' << r.rel_curl << ',' << r.norm_u << ',' << r.norm_grad_u << ',' << r.norm_div_u << ','
        << r.norm_R << ',' << r.norm_curl_R << '\n';
    return out.str();
}

BoundReport linear_bound_report(const std::vector<SlabGrid>& grids, const BoundReportConfig& cfg) {
    if (!(cfg.p1 == cfg.p) || !(cfg.r1 == cfg.r)) {
        const double kappa = 2.0 * cfg.p1.reciprocal() - 2.0 * cfg.p.reciprocal() + cfg.r1.reciprocal() -
                             cfg.r.reciprocal();
        if (kappa < 0.0) {
            throw PreconditionError("kappa = 2/p1 - 2/p + 1/r1 - 1/r must be >= 0");
        }
        throw PreconditionError("linear bound report supports only p1 = p and r1 = r");
    }
    if (cfg.trials < 0) {
        throw ParameterError("trial count must be >= 0");
    }
    BoundReport rep;
    if (cfg.trials == 0) {
        return rep;
    }
    BesovIndex out_index{cfg.s, cfg.p, cfg.q, cfg.r};
    BesovIndex in_index{cfg.s - 1.0, cfg.p, cfg.q, cfg.r};
    for (const auto& g : grids) {
        const DyadicLadder ladder = build_ladder(g);
        BoundLevel level{g, 0.0, {}};
        Rng rng(cfg.seed);
        for (int t = 0; t < cfg.trials; ++t) {
            const ForcingTensor F(random_smooth_field(g, 9, rng, cfg.width));
            const VelocityField u = apply_D(F, false);
            const double num = besov_norm(ladder, u.field(), out_index);
            const double den = besov_norm(ladder, F.field(), in_index);
            const double ratio = den > 0.0 ? num / den : 0.0;
            level.ratios.push_back(ratio);
            level.max_ratio = std::max(level.max_ratio, ratio);
        }
        rep.levels.push_back(std::move(level));
    }
    double lo = rep.levels.front().max_ratio;
    double hi = lo;
    for (const auto& l : rep.levels) {
        lo = std::min(lo, l.max_ratio);
        hi = std::max(hi, l.max_ratio);
    }
    rep.growth = lo > 0.0 ? hi / lo : 1.0;
    return rep;
}

}  // namespace stokeslab
