#include "stokeslab/bony.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "stokeslab/error.hpp"
#include "stokeslab/product.hpp"
#include "stokeslab/synthetic.hpp"

namespace stokeslab {

namespace {

void check_pair(const DyadicLadder& ladder, const SpectralField& f, const SpectralField& g, const char* what) {
    require_same_grid(f.grid(), g.grid(), what);
    require_same_grid(ladder.grid(), f.grid(), what);
    if (f.ncomp() != 1 || g.ncomp() != 1) {
        throw ShapeError(std::string(what) + " expects scalar fields");
    }
}

Exponent holder(const Exponent& a, const Exponent& b, const char* name) {
    const double inv = a.reciprocal() + b.reciprocal();
    if (inv > 1.0 + 1e-15) {
        throw PreconditionError(std::string("1/") + name + "1 + 1/" + name + "2 exceeds 1");
    }
    return inv == 0.0 ? Exponent::infinity() : Exponent::finite(1.0 / inv);
}

double growth(const std::vector<ProductLawLevel>& levels, double ProductLawLevel::*m) {
    double lo = levels.front().*m;
    double hi = lo;
    for (const auto& l : levels) {
        lo = std::min(lo, l.*m);
        hi = std::max(hi, l.*m);
    }
    return lo > 0.0 ? hi / lo : (hi > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
}

}  // namespace

SpectralField paraproduct(const DyadicLadder& ladder, const SpectralField& f, const SpectralField& g) {
    check_pair(ladder, f, g, "paraproduct");
    SpectralField out(f.grid(), 1);
    for (int j = ladder.j_min(); j <= ladder.j_max(); ++j) {
        const SpectralField low = low_pass(ladder, f, j - 1);
        const SpectralField block = dyadic_block(ladder, g, j);
        if (low.max_abs() == 0.0 || block.max_abs() == 0.0) {
            continue;
        }
        out.axpy(1.0, product_from_samples(padded_samples(low), padded_samples(block), f.grid()));
    }
    return out;
}

SpectralField remainder(const DyadicLadder& ladder, const SpectralField& f, const SpectralField& g) {
    check_pair(ladder, f, g, "remainder");
    SpectralField out(f.grid(), 1);
    for (int j = ladder.j_min(); j <= ladder.j_max(); ++j) {
        const SpectralField fj = dyadic_block(ladder, f, j);
        SpectralField near(f.grid(), 1);
        for (int nu = -1; nu <= 1; ++nu) {
            if (ladder.contains(j + nu)) {
                near.axpy(1.0, dyadic_block(ladder, g, j + nu));
            }
        }
        if (fj.max_abs() == 0.0 || near.max_abs() == 0.0) {
            continue;
        }
        out.axpy(1.0, product_from_samples(padded_samples(fj), padded_samples(near), f.grid()));
    }
    return out;
}

BesovIndex product_target_index(const ProductLawConfig& cfg) {
    if ((cfg.law == ProductLaw::paraproduct || cfg.law == ProductLaw::both) && !(cfg.s1 < 0.0)) {
        throw PreconditionError("paraproduct law requires s1 < 0");
    }
    if ((cfg.law == ProductLaw::remainder || cfg.law == ProductLaw::both) && !(cfg.s1 + cfg.s2 > 0.0)) {
        throw PreconditionError("remainder law requires s1 + s2 > 0");
    }
    BesovIndex idx;
    idx.s = cfg.s1 + cfg.s2;
    idx.p = holder(cfg.p1, cfg.p2, "p");
    idx.q = holder(cfg.q1, cfg.q2, "q");
    idx.r = holder(cfg.r1, cfg.r2, "r");
    return idx;
}

ProductLawReport product_law_report(const std::vector<SlabGrid>& grids, const ProductLawConfig& cfg) {
    const BesovIndex target = product_target_index(cfg);
    if (cfg.trials < 0) {
        throw ParameterError("trial count must be >= 0");
    }
    ProductLawReport rep;
    if (cfg.trials == 0) {
        return rep;
    }
    const BesovIndex fi{cfg.s1, cfg.p1, cfg.q1, cfg.r1};
    const BesovIndex gi{cfg.s2, cfg.p2, cfg.q2, cfg.r2};
    const bool para = cfg.law != ProductLaw::remainder;
    const bool rem = cfg.law != ProductLaw::paraproduct;
    for (const auto& grid : grids) {
        const DyadicLadder ladder = build_ladder(grid);
        ProductLawLevel level{grid, {}, {}, 0.0, 0.0};
        Rng rng(cfg.seed);
        for (int t = 0; t < cfg.trials; ++t) {
            const SpectralField f = random_nodewise_field(grid, 1, rng);
            const SpectralField g = random_nodewise_field(grid, 1, rng);
            const double denom = besov_norm(ladder, f, fi) * besov_norm(ladder, g, gi);
            const double rp = para && denom > 0.0 ? besov_norm(ladder, paraproduct(ladder, f, g), target) / denom : 0.0;
            const double rr = rem && denom > 0.0 ? besov_norm(ladder, remainder(ladder, f, g), target) / denom : 0.0;
            level.ratio_para.push_back(rp);
            level.ratio_rem.push_back(rr);
            level.max_para = std::max(level.max_para, rp);
            level.max_rem = std::max(level.max_rem, rr);
        }
        rep.levels.push_back(std::move(level));
    }
    rep.growth_para = growth(rep.levels, &ProductLawLevel::max_para);
    rep.growth_rem = growth(rep.levels, &ProductLawLevel::max_rem);
    return rep;
}

std::string product_law_csv(const ProductLawLevel& level) {
    std::ostringstream out;
    out.precision(17);
    out << "trial,ratio_para,ratio_rem\n";
    for (std::size_t t = 0; t < level.ratio_para.size(); ++t) {
        out << t << ',' << level.ratio_para[t] << ',' << level.ratio_rem[t] << '\n';
    }
    return out.str();
}

}  // namespace stokeslab
