#include "stokeslab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "stokeslab/parallel.hpp"

namespace stokeslab {

namespace {

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(int n1, int n2, int sign, bool in_place) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(n1, n2, sign, in_place);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        const std::size_t n = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
        auto* a = fftw_alloc_complex(n);
        auto* b = in_place ? a : fftw_alloc_complex(n);
        fftw_plan plan = fftw_plan_dft_2d(n1, n2, a, b, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (b != a) {
            fftw_free(b);
        }
        fftw_free(a);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void dft2d(const cplx* in, cplx* out, int n1, int n2, int sign) {
    const bool in_place = in == out;
    fftw_plan plan = cache().get(n1, n2, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, in_place);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

SpectralField forward(const PhysicalField& f, Projection projection) {
    const auto& g = f.grid();
    SpectralField out(g, f.ncomp());
    const double norm = 1.0 / static_cast<double>(g.nxy());
    const auto planes = static_cast<std::size_t>(f.ncomp()) * static_cast<std::size_t>(g.nz);
    parallel_for(planes, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            const int c = static_cast<int>(p / static_cast<std::size_t>(g.nz));
            const int k = static_cast<int>(p % static_cast<std::size_t>(g.nz));
            auto src = f.plane(c, k);
            auto dst = out.plane(c, k);
            for (std::size_t i = 0; i < g.nxy(); ++i) {
                dst[i] = src[i];
            }
            dft2d(dst.data(), dst.data(), g.nx, g.ny, -1);
            for (auto& v : dst) {
                v *= norm;
            }
            symmetrize_plane(dst, g);
        }
    });
    if (projection == Projection::homogeneous) {
        out.project_homogeneous();
    }
    return out;
}

PhysicalField inverse(const SpectralField& f) {
    const auto& g = f.grid();
    PhysicalField out(g, f.ncomp());
    const auto planes = static_cast<std::size_t>(f.ncomp()) * static_cast<std::size_t>(g.nz);
    parallel_for(planes, [&](std::size_t begin, std::size_t end) {
        std::vector<cplx> work(g.nxy());
        for (std::size_t p = begin; p < end; ++p) {
            const int c = static_cast<int>(p / static_cast<std::size_t>(g.nz));
            const int k = static_cast<int>(p % static_cast<std::size_t>(g.nz));
            dft2d(f.plane(c, k).data(), work.data(), g.nx, g.ny, +1);
            auto dst = out.plane(c, k);
            for (std::size_t i = 0; i < g.nxy(); ++i) {
                dst[i] = work[i].real();
            }
        }
    });
    return out;
}

}  // namespace stokeslab
