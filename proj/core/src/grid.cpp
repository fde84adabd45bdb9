#include "stokeslab/grid.hpp"

#include <bit>
#include <string>

#include "stokeslab/error.hpp"

namespace stokeslab {

namespace {

bool admissible_count(int n) {
    return n >= 4 && std::has_single_bit(static_cast<unsigned>(n));
}

}  // namespace

void validate(const SlabGrid& g) {
    if (!admissible_count(g.nx)) {
        throw ValidationError("nx not a power of two ≥ 4 (got " + std::to_string(g.nx) + ")");
    }
    if (!admissible_count(g.ny)) {
        throw ValidationError("ny not a power of two ≥ 4 (got " + std::to_string(g.ny) + ")");
    }
    if (g.nz < 3) {
        throw ValidationError("nz < 3 (got " + std::to_string(g.nz) + ")");
    }
    if (!(g.lx > 0.0) || !std::isfinite(g.lx)) {
        throw ValidationError("Lx must be a positive period");
    }
    if (!(g.ly > 0.0) || !std::isfinite(g.ly)) {
        throw ValidationError("Ly must be a positive period");
    }
    if (!(g.z_min < g.z_max) || !std::isfinite(g.z_min) || !std::isfinite(g.z_max)) {
        throw ValidationError("z_min ≥ z_max");
    }
}

SlabGrid make_grid(int nx, int ny, double lx, double ly, int nz, double z_min, double z_max) {
    SlabGrid g{nx, ny, nz, lx, ly, z_min, z_max};
    validate(g);
    return g;
}

}  // namespace stokeslab
