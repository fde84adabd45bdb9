#include "cli.hpp"

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "stokeslab/error.hpp"
#include "stokeslab/parallel.hpp"

namespace stokeslab::cli {

namespace {

const std::vector<std::string> kSubcommands{"solve",        "norm",      "verify-kernel", "verify-bony",
                                            "scaling-check", "decay-fit", "residual",      "hypothesis"};

CLI::App* subcommand(CLI::App& app, const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    return sub;
}

std::string& config_sink() {
    static std::string sink;
    return sink;
}

void add_common(CLI::App* sub, CommonOptions& c) {
    sub->add_option("--config", config_sink(), "Flat key=value configuration file")->group("General");
    sub->add_option("--out", c.out, "Output directory")->group("General");
    sub->add_option("--seed", c.seed, "Seed for randomized inputs")->group("General");
    sub->add_option("--threads", c.threads, "Worker threads (overrides STOKESLAB_THREADS)")
        ->check(CLI::PositiveNumber)
        ->group("General");
    sub->add_option("--format", c.format, "Summary format on stdout")
        ->check(CLI::IsMember({"text", "csv"}))
        ->group("General");
}

void add_grid(CLI::App* sub, GridOptions& g) {
    sub->add_option("--nx", g.nx, "Horizontal nodes along x1 (power of two)")->group("Grid");
    sub->add_option("--ny", g.ny, "Horizontal nodes along x2 (power of two)")->group("Grid");
    sub->add_option("--nz", g.nz, "Vertical nodes")->group("Grid");
    sub->add_option("--lx", g.lx, "Period along x1 (number or '<k>pi')")->group("Grid");
    sub->add_option("--ly", g.ly, "Period along x2 (number or '<k>pi')")->group("Grid");
    sub->add_option("--zmin", g.z_min, "Lower vertical end")->group("Grid");
    sub->add_option("--zmax", g.z_max, "Upper vertical end")->group("Grid");
    sub->add_option("--bump", g.bump, "Littlewood-Paley profile")
        ->check(CLI::IsMember({"smooth", "cosine"}))
        ->group("Grid");
    sub->add_option("--N0", g.N0, "Low/high frequency split")->group("Grid");
}

void add_forcing(CLI::App* sub, ForcingOptions& f) {
    sub->add_option("--forcing", f.kind, "Synthetic forcing: random or blob")->group("Forcing");
    sub->add_option("--forcing-file", f.file, "Forcing tensor (9-component SFLD1 file)")->group("Forcing");
    sub->add_option("--width", f.width, "Vertical Gaussian width (random) or support radius (blob)")
        ->group("Forcing");
    sub->add_option("--blob-width", f.blob_width, "Horizontal Gaussian width of the blob")->group("Forcing");
    sub->add_option("--max-mode", f.max_mode, "Largest |n_i| of the random forcing")->group("Forcing");
    sub->add_option("--component", f.component, "Tensor entry of the blob, e.g. 13")->group("Forcing");
    sub->add_option("--scale-to", f.scale_to, "Rescale so the hypothesis sum is this fraction of eta")
        ->group("Forcing");
    sub->add_option("--amplitude", f.amplitude, "Multiplier applied after rescaling")->group("Forcing");
}

void add_hypothesis(CLI::App* sub, HypothesisOptions& h) {
    sub->add_option("--sigma", h.sigma, "Decay exponent of the hypothesis")->group("Hypothesis");
    sub->add_option("--p", h.p, "Lebesgue exponent p of the hypothesis")->group("Hypothesis");
    sub->add_option("--delta", h.delta, "Extra high-frequency smoothness")->group("Hypothesis");
    sub->add_option("--eta", h.eta, "Smallness budget")->group("Hypothesis");
}

void apply_threads(int flag) {
    int threads = 1;
    if (const char* env = std::getenv("STOKESLAB_THREADS")) {
        try {
            threads = std::stoi(env);
        } catch (const std::exception&) {
            throw ValidationError(std::string("STOKESLAB_THREADS is not an integer: ") + env);
        }
        if (threads < 1) {
            throw ValidationError("STOKESLAB_THREADS must be >= 1");
        }
    }
    if (flag > 0) {
        threads = flag;
    }
    set_thread_count(threads);
}

}  // namespace

int run(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args);
}

int run(const std::vector<std::string>& raw) {
    std::vector<std::string> args;
    try {
        args = expand_config(raw, kSubcommands);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    CLI::App app{"Stationary Navier-Stokes toolkit on a periodic slab", "stokeslab"};
    app.require_subcommand(1);

    SolveOptions solve;
    CLI::App* s_solve = subcommand(app, "solve", "Picard solve of u = D[f - u (x) u]");
    add_common(s_solve, solve.common);
    add_grid(s_solve, solve.grid);
    add_forcing(s_solve, solve.forcing);
    add_hypothesis(s_solve, solve.hypothesis);
    s_solve->add_option("--max-iter", solve.max_iter, "Iteration cap")->group("Solver");
    s_solve->add_option("--tol", solve.tol, "Relative update tolerance")->group("Solver");
    s_solve->add_option("--dealias", solve.dealias, "3/2-rule products (true/false)")->group("Solver");
    s_solve->add_option("--monitor-p", solve.monitor_p, "Monitored norm p")->group("Solver");
    s_solve->add_option("--monitor-q", solve.monitor_q, "Monitored norm q")->group("Solver");
    s_solve->add_option("--monitor-r", solve.monitor_r, "Monitored norm r")->group("Solver");
    s_solve->add_flag("--require-hypothesis", solve.require_hypothesis, "Stop with exit 1 when f is not small")
        ->group("Solver");

    HypothesisCommand hyp;
    CLI::App* s_hyp = subcommand(app, "hypothesis", "Smallness hypothesis of the decay theorem");
    add_common(s_hyp, hyp.common);
    add_grid(s_hyp, hyp.grid);
    add_forcing(s_hyp, hyp.forcing);
    add_hypothesis(s_hyp, hyp.hypothesis);

    NormOptions norm;
    CLI::App* s_norm = subcommand(app, "norm", "Hybrid Besov norm of a field file");
    add_common(s_norm, norm.common);
    s_norm->add_option("--in", norm.in, "Field file")->required();
    s_norm->add_option("--bump", norm.bump, "Littlewood-Paley profile")->check(CLI::IsMember({"smooth", "cosine"}));
    s_norm->add_option("--s", norm.s, "Regularity, or 'critical' for 2/p + 1/r - 1");
    s_norm->add_option("--p", norm.p, "Horizontal exponent (number or inf)");
    s_norm->add_option("--q", norm.q, "Block-sum exponent (number or inf)");
    s_norm->add_option("--r", norm.r, "Vertical exponent (number or inf)");
    s_norm->add_option("--part", norm.part, "Block range")->check(CLI::IsMember({"full", "low", "high"}));
    s_norm->add_option("--N0", norm.N0, "Low/high frequency split");
    s_norm->add_option("--sigma", norm.sigma, "Vertical weight exponent");

    KernelOptions kern;
    CLI::App* s_kern = subcommand(app, "verify-kernel", "Block gain exponents of the model operators");
    add_common(s_kern, kern.common);
    kern.common.seed = 7;
    add_grid(s_kern, kern.grid);
    s_kern->add_option("--kind", kern.kind, "D0, D1, Dt0 or Dt1")->check(CLI::IsMember({"D0", "D1", "Dt0", "Dt1"}));
    s_kern->add_option("--jmin", kern.jmin, "First block");
    s_kern->add_option("--jmax", kern.jmax, "Last block");
    s_kern->add_option("--p", kern.p, "Horizontal exponent");
    s_kern->add_option("--r", kern.r, "Vertical exponent");
    s_kern->add_option("--trials", kern.trials, "Random inputs per block");
    s_kern->add_option("--sigma", kern.sigma, "Vertical weight exponent");
    s_kern->add_option("--profile", kern.profile, "Vertical input shape")
        ->check(CLI::IsMember({"modulated", "dilated"}));
    s_kern->add_option("--profile-width", kern.width, "Vertical envelope width");
    s_kern->add_option("--kappa", kern.kappa, "Modulation factor of the modulated profile");
    s_kern->add_option("--tolerance", kern.tolerance, "Slope tolerance (default 0.15, 0.2 for Dt0/Dt1)");

    BonyOptions bony;
    CLI::App* s_bony = subcommand(app, "verify-bony", "Paraproduct and remainder law ratios under refinement");
    add_common(s_bony, bony.common);
    bony.common.seed = 3;
    s_bony->add_option("--levels", bony.levels, "Horizontal node counts, one grid per level")->delimiter(',');
    s_bony->add_option("--lx", bony.lx, "Horizontal period");
    s_bony->add_option("--nz", bony.nz, "Vertical nodes");
    s_bony->add_option("--zmin", bony.z_min, "Lower vertical end");
    s_bony->add_option("--zmax", bony.z_max, "Upper vertical end");
    s_bony->add_option("--law", bony.law, "Which law")->check(CLI::IsMember({"both", "paraproduct", "remainder"}));
    s_bony->add_option("--s1", bony.s1, "Regularity of f");
    s_bony->add_option("--s2", bony.s2, "Regularity of g");
    s_bony->add_option("--p1", bony.p1);
    s_bony->add_option("--p2", bony.p2);
    s_bony->add_option("--q1", bony.q1);
    s_bony->add_option("--q2", bony.q2);
    s_bony->add_option("--r1", bony.r1);
    s_bony->add_option("--r2", bony.r2);
    s_bony->add_option("--trials", bony.trials, "Random pairs per level");
    s_bony->add_option("--growth", bony.growth, "Largest accepted max/min ratio across levels");

    ScalingOptions scal;
    CLI::App* s_scal = subcommand(app, "scaling-check", "Invariance of the critical norm under u -> 2u(2x)");
    add_common(s_scal, scal.common);
    add_grid(s_scal, scal.grid);
    s_scal->add_option("--pairs", scal.pairs, "p:r pairs, e.g. 2:2,4:2,2:inf")->delimiter(',');
    s_scal->add_option("--q", scal.q, "Block-sum exponent");
    s_scal->add_option("--width", scal.width, "Vertical width of the random field");
    s_scal->add_option("--tolerance", scal.tolerance, "Accepted relative change");

    DecayOptions dec;
    CLI::App* s_dec = subcommand(app, "decay-fit", "Power-law fit of sup |u| against <x3>");
    add_common(s_dec, dec.common);
    s_dec->add_option("--in", dec.in, "Velocity field file")->required();
    s_dec->add_option("--sigma-target", dec.sigma_target, "Required decay exponent");
    s_dec->add_option("--window-lo", dec.window_lo, "Smallest <x3> of the window");
    s_dec->add_option("--window-hi", dec.window_hi, "Largest <x3> of the window");

    ResidualOptions res;
    CLI::App* s_res = subcommand(app, "residual", "Residuals of -Delta u = P div F");
    add_common(s_res, res.common);
    s_res->add_option("--u", res.u, "Velocity field file")->required();
    s_res->add_option("--forcing-file", res.forcing, "Forcing tensor file")->required();
    s_res->add_flag("--nonlinear", res.nonlinear, "Use F = f - u (x) u");
    s_res->add_option("--dealias", res.dealias, "3/2-rule products (true/false)");
    s_res->add_option("--div-tol", res.div_tol, "Accepted rel_div");
    s_res->add_option("--curl-tol", res.curl_tol, "Accepted rel_curl");

    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitUsage;
    }

    try {
        if (s_solve->parsed()) {
            apply_threads(solve.common.threads);
            return run_solve(solve);
        }
        if (s_hyp->parsed()) {
            apply_threads(hyp.common.threads);
            return run_hypothesis(hyp);
        }
        if (s_norm->parsed()) {
            apply_threads(norm.common.threads);
            return run_norm(norm);
        }
        if (s_kern->parsed()) {
            apply_threads(kern.common.threads);
            return run_verify_kernel(kern);
        }
        if (s_bony->parsed()) {
            apply_threads(bony.common.threads);
            return run_verify_bony(bony);
        }
        if (s_scal->parsed()) {
            apply_threads(scal.common.threads);
            return run_scaling_check(scal);
        }
        if (s_dec->parsed()) {
            apply_threads(dec.common.threads);
            return run_decay_fit(dec);
        }
        if (s_res->parsed()) {
            apply_threads(res.common.threads);
            return run_residual(res);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const stokeslab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    std::cerr << app.help();
    return kExitUsage;
}

}  // namespace stokeslab::cli
