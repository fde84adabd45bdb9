#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stokeslab::cli {

struct CommonOptions {
    std::string out = ".";
    std::uint64_t seed = 1;
    int threads = 0;
    std::string format = "text";
};

struct GridOptions {
    int nx = 64;
    int ny = 64;
    int nz = 257;
    std::string lx = "2pi";
    std::string ly = "2pi";
    double z_min = -8.0;
    double z_max = 8.0;
    std::string bump = "smooth";
    int N0 = 0;
};

struct ForcingOptions {
    std::string kind = "random";  ///< random | blob
    std::string file;
    double width = 1.0;
    double blob_width = 4.0;
    int max_mode = 3;
    std::string component = "13";
    double scale_to = 0.0;
    double amplitude = 1.0;
};

struct HypothesisOptions {
    double sigma = 0.25;
    std::string p = "2";
    double delta = 0.0;
    double eta = 100.0;
};

struct SolveOptions {
    CommonOptions common;
    GridOptions grid;
    ForcingOptions forcing;
    HypothesisOptions hypothesis;
    int max_iter = 50;
    double tol = 1e-10;
    bool dealias = true;
    std::string monitor_p = "2";
    std::string monitor_q = "1";
    std::string monitor_r = "2";
    bool require_hypothesis = false;
};

struct HypothesisCommand {
    CommonOptions common;
    GridOptions grid;
    ForcingOptions forcing;
    HypothesisOptions hypothesis;
};

struct NormOptions {
    CommonOptions common;
    std::string in;
    std::string bump = "smooth";
    std::string s = "critical";
    std::string p = "2";
    std::string q = "1";
    std::string r = "2";
    std::string part = "full";
    int N0 = 0;
    double sigma = 0.0;
};

struct KernelOptions {
    CommonOptions common;
    GridOptions grid;
    std::string kind = "D0";
    int jmin = 0;
    int jmax = 4;
    std::string p = "2";
    std::string r = "2";
    int trials = 10;
    double sigma = 0.0;
    std::string profile = "modulated";
    double width = 1.0;
    double kappa = 0.5;
    double tolerance = -1.0;
};

struct BonyOptions {
    CommonOptions common;
    std::vector<int> levels{32, 64, 128};
    std::string lx = "2pi";
    int nz = 5;
    double z_min = -1.0;
    double z_max = 1.0;
    std::string law = "both";
    double s1 = -0.5;
    double s2 = 1.0;
    std::string p1 = "4";
    std::string p2 = "4";
    std::string q1 = "2";
    std::string q2 = "2";
    std::string r1 = "2";
    std::string r2 = "2";
    int trials = 50;
    double growth = 2.0;
};

struct ScalingOptions {
    CommonOptions common;
    GridOptions grid;
    std::vector<std::string> pairs{"2:2", "4:2", "2:inf"};
    std::string q = "1";
    double width = 1.0;
    double tolerance = 0.02;
};

struct DecayOptions {
    CommonOptions common;
    std::string in;
    double sigma_target = 0.4;
    double window_lo = 6.0;
    double window_hi = 20.0;
};

struct ResidualOptions {
    CommonOptions common;
    std::string u;
    std::string forcing;
    bool nonlinear = false;
    bool dealias = true;
    double div_tol = 1e-8;
    double curl_tol = 5e-3;
};

int run_solve(const SolveOptions& o);
int run_hypothesis(const HypothesisCommand& o);
int run_norm(const NormOptions& o);
int run_verify_kernel(const KernelOptions& o);
int run_verify_bony(const BonyOptions& o);
int run_scaling_check(const ScalingOptions& o);
int run_decay_fit(const DecayOptions& o);
int run_residual(const ResidualOptions& o);

}  // namespace stokeslab::cli
