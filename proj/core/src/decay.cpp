#include "stokeslab/decay.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stokeslab/error.hpp"
#include "stokeslab/fft.hpp"

namespace stokeslab {

std::vector<double> horizontal_sup(const PhysicalField& u) {
    const auto& g = u.grid();
    std::vector<double> m(static_cast<std::size_t>(g.nz), 0.0);
    for (int k = 0; k < g.nz; ++k) {
        double best = 0.0;
        for (std::size_t i = 0; i < g.nxy(); ++i) {
            double s = 0.0;
            for (int c = 0; c < u.ncomp(); ++c) {
                const double v = u.plane(c, k)[i];
                s += v * v;
            }
            best = std::max(best, s);
        }
        m[static_cast<std::size_t>(k)] = std::sqrt(best);
    }
    return m;
}

std::vector<double> horizontal_sup(const SpectralField& u) { return horizontal_sup(inverse(u)); }

namespace {

DecayBranch fit_branch(const SlabGrid& g, std::span<const double> m, const DecayWindow& w, int sign) {
    DecayBranch b;
    std::vector<double> x;
    std::vector<double> y;
    for (int k = 0; k < g.nz; ++k) {
        const double z = g.z(k);
        if (sign * z <= 0.0) {
            continue;
        }
        const double br = std::sqrt(1.0 + z * z);
        if (br < w.lo || br > w.hi) {
            continue;
        }
        const double mk = m[static_cast<std::size_t>(k)];
        b.samples.push_back({z, br, mk});
        x.push_back(std::log(br));
        y.push_back(mk > 0.0 ? std::log(mk) : -745.0);
    }
    if (b.samples.size() < 8) {
        throw ParameterError("decay window holds " + std::to_string(b.samples.size()) + " nodes on the " +
                             (sign > 0 ? "positive" : "negative") + " branch (need >= 8)");
    }
    if (sign < 0) {
        std::reverse(b.samples.begin(), b.samples.end());
        std::reverse(x.begin(), x.end());
        std::reverse(y.begin(), y.end());
    }
    b.fit = fit_line(x, y);
    b.sigma = -b.fit.slope;
    return b;
}

}  // namespace

DecayReport decay_fit(const SlabGrid& g, std::span<const double> m, double sigma_target, const DecayWindow& w) {
    if (m.size() != static_cast<std::size_t>(g.nz)) {
        throw ShapeError("decay profile length does not match nz");
    }
    if (!(w.lo >= 1.0) || !(w.hi > w.lo)) {
        throw ParameterError("decay window must satisfy 1 <= lo < hi");
    }
    const double zr = std::sqrt(w.hi * w.hi - 1.0);
    const double margin = 0.1 * (g.z_max - g.z_min);
    if (zr > g.z_max - margin || -zr < g.z_min + margin) {
        throw ParameterError("decay window reaches within 10% of the slab height of the boundary");
    }
    DecayReport rep;
    rep.sigma_target = sigma_target;
    rep.window = w;
    rep.positive = fit_branch(g, m, w, +1);
    rep.negative = fit_branch(g, m, w, -1);
    rep.sigma_fit = std::min(rep.positive.sigma, rep.negative.sigma);
    rep.residual = std::max(rep.positive.fit.residual, rep.negative.fit.residual);
    rep.curved = rep.residual > kDecayCurvatureThreshold;
    return rep;
}

DecayReport decay_fit(const SpectralField& u, double sigma_target, const DecayWindow& w) {
    return decay_fit(u.grid(), horizontal_sup(u), sigma_target, w);
}

DecayReport decay_fit(const PhysicalField& u, double sigma_target, const DecayWindow& w) {
    return decay_fit(u.grid(), horizontal_sup(u), sigma_target, w);
}

std::string decay_csv(const DecayReport& r) {
    std::ostringstream out;
    out.precision(17);
    out << "branch,z,bracket,sup_abs_u\n";
    for (const auto* b : {&r.negative, &r.positive}) {
        const char* name = b == &r.positive ? "positive" : "negative";
        for (const auto& s : b->samples) {
            out << name << ',' << s.z << ',' << s.bracket << ',' << s.magnitude << '\n';
        }
    }
    return out.str();
}

}  // namespace stokeslab
