#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>
#include <vector>

#include "cli.hpp"
#include "config.hpp"
#include "doctest.h"
#include "stokeslab/field_io.hpp"
#include "stokeslab/parallel.hpp"
#include "stokeslab/synthetic.hpp"

namespace fs = std::filesystem;
using stokeslab::cli::run;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::current_path() / "cli_scratch" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "stokeslab");
    return run(args);
}

const char* kSmallSolve =
    "# small solve\n"
    "nx = 16\n"
    "ny = 16\n"
    "nz = 257   ; vertical nodes\n"
    "scale_to = 0.5\n";

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}) == 2);
    CHECK(cli({}) == 2);
    CHECK(cli({"bogus"}) == 2);
    CHECK(cli({"verify-kernel", "--no-such-flag"}) == 2);
    CHECK(cli({"verify-kernel", "--kind", "D7"}) == 2);
    CHECK(cli({"solve", "--nx", "30"}) == 2);
    CHECK(cli({"solve", "--threads", "0"}) == 2);
    CHECK(cli({"norm"}) == 2);
}

TEST_CASE("missing config exits with 2") {
    CHECK(cli({"solve", "--config", "missing.ini"}) == 2);
    CHECK(cli({"solve", "--config"}) == 2);
    const fs::path dir = scratch("bad_config");
    write_file(dir / "bad.ini", "nx 16\n");
    CHECK(cli({"solve", "--config", (dir / "bad.ini").string()}) == 2);
}

TEST_CASE("verify-kernel passes on the default grid and fails a tight tolerance") {
    const fs::path dir = scratch("kernel");
    CHECK(cli({"verify-kernel", "--kind", "D0", "--jmin", "0", "--jmax", "4", "--seed", "7", "--out", dir.string()}) ==
          0);
    CHECK(fs::exists(dir / "kernel.csv"));
    CHECK(cli({"verify-kernel", "--kind", "D0", "--jmin", "0", "--jmax", "4", "--nx", "32", "--ny", "32",
               "--tolerance", "1e-4", "--out", dir.string()}) == 1);
}

TEST_CASE("solve writes its reports and flags override the config") {
    const fs::path dir = scratch("solve");
    write_file(dir / "c.ini", kSmallSolve);
    const fs::path out = dir / "run1";
    REQUIRE(cli({"solve", "--config", (dir / "c.ini").string(), "--out", out.string()}) == 0);
    for (const char* name : {"u.sfld", "forcing.sfld", "trace.csv", "residual.csv", "hypothesis.csv"}) {
        CHECK(fs::exists(out / name));
    }
    CHECK(stokeslab::read_field(out / "u.sfld").header.grid.nz == 257);

    const fs::path out2 = dir / "run2";
    REQUIRE(cli({"solve", "--config", (dir / "c.ini").string(), "--nz", "129", "--out", out2.string()}) == 0);
    CHECK(stokeslab::read_field(out2 / "u.sfld").header.grid.nz == 129);

    CHECK(cli({"residual", "--u", (out / "u.sfld").string(), "--forcing-file", (out / "forcing.sfld").string(),
               "--nonlinear", "--out", (dir / "res").string()}) == 0);
    CHECK(fs::exists(dir / "res" / "residual.csv"));
    CHECK(cli({"norm", "--in", (out / "u.sfld").string(), "--out", (dir / "norm").string()}) == 0);
    CHECK(fs::exists(dir / "norm" / "norm.csv"));
    CHECK(cli({"norm", "--in", (dir / "nothing.sfld").string()}) == 2);
}

TEST_CASE("identical arguments give identical files") {
    const fs::path dir = scratch("determinism");
    write_file(dir / "c.ini", kSmallSolve);
    for (const char* name : {"a", "b"}) {
        REQUIRE(cli({"solve", "--config", (dir / "c.ini").string(), "--seed", "5", "--out", (dir / name).string()}) ==
                0);
    }
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
        const fs::path other = dir / "b" / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(entry.path()) == slurp(other));
    }
    REQUIRE(cli({"solve", "--config", (dir / "c.ini").string(), "--seed", "6", "--out", (dir / "c").string()}) == 0);
    CHECK(slurp(dir / "a" / "forcing.sfld") != slurp(dir / "c" / "forcing.sfld"));
}

TEST_CASE("decay-fit fails on a field that does not decay") {
    const fs::path dir = scratch("decay");
    const auto g = stokeslab::make_grid(8, 8, 2 * std::numbers::pi, 2 * std::numbers::pi, 257, -32.0, 32.0);
    stokeslab::SpectralField u(g, 3);
    stokeslab::add_cosine_mode(u, 0, 1, 0, 1.0, stokeslab::constant_profile(g));
    stokeslab::write_field(dir / "flat.sfld", u);
    CHECK(cli({"decay-fit", "--in", (dir / "flat.sfld").string(), "--sigma-target", "0.25", "--window-lo", "4",
               "--window-hi", "8", "--out", dir.string()}) == 1);
    CHECK(fs::exists(dir / "decay.csv"));
    stokeslab::SpectralField v(g, 3);
    stokeslab::add_cosine_mode(v, 0, 1, 0, 1.0, stokeslab::modulated_profile(g, 1e9, 0.0, 0.0));
    for (int k = 0; k < g.nz; ++k) {
        const double z = g.z(k);
        for (auto& c : v.plane(0, k)) {
            c *= std::pow(1.0 + z * z, -0.25);
        }
    }
    stokeslab::write_field(dir / "power.sfld", v);
    CHECK(cli({"decay-fit", "--in", (dir / "power.sfld").string(), "--sigma-target", "0.45", "--window-lo", "4",
               "--window-hi", "20", "--out", dir.string()}) == 0);
    CHECK(cli({"decay-fit", "--in", (dir / "flat.sfld").string(), "--window-lo", "4", "--window-hi", "31"}) == 2);
}

TEST_CASE("thread count from the environment and the flag") {
    const fs::path dir = scratch("threads");
    ::setenv("STOKESLAB_THREADS", "abc", 1);
    CHECK(cli({"scaling-check", "--nx", "16", "--ny", "16", "--nz", "65", "--out", dir.string()}) == 2);
    ::setenv("STOKESLAB_THREADS", "3", 1);
    CHECK(cli({"scaling-check", "--nx", "16", "--ny", "16", "--nz", "65", "--out", dir.string()}) == 0);
    CHECK(stokeslab::thread_count() == 3);
    CHECK(cli({"scaling-check", "--nx", "16", "--ny", "16", "--nz", "65", "--threads", "2", "--out", dir.string()}) ==
          0);
    CHECK(stokeslab::thread_count() == 2);
    ::unsetenv("STOKESLAB_THREADS");
    stokeslab::set_thread_count(1);
}

TEST_CASE("config parsing") {
    const fs::path dir = scratch("config");
    write_file(dir / "c.ini", "# comment\n\n  max_iter = 7 ; trailing\nlx=2pi\n");
    const auto entries = stokeslab::cli::read_config(dir / "c.ini");
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].first == "max-iter");
    CHECK(entries[0].second == "7");
    CHECK(entries[1].first == "lx");
    CHECK(entries[1].second == "2pi");

    const auto expanded = stokeslab::cli::expand_config(
        {"stokeslab", "solve", "--config", (dir / "c.ini").string(), "--nx", "32"}, {"solve"});
    const std::vector<std::string> expected{"stokeslab", "solve", "--max-iter=7", "--lx=2pi", "--nx", "32"};
    CHECK(expanded == expected);
    CHECK_THROWS_AS((void)stokeslab::cli::read_config(dir / "absent.ini"), stokeslab::cli::ConfigError);
}

TEST_CASE("length values") {
    using stokeslab::cli::parse_length;
    constexpr double pi = std::numbers::pi;
    CHECK(parse_length("2pi") == 2 * pi);
    CHECK(parse_length("pi") == pi);
    CHECK(parse_length("0.5pi") == 0.5 * pi);
    CHECK(parse_length("2*pi") == 2 * pi);
    CHECK(parse_length(" 3.25 ") == 3.25);
    CHECK_THROWS_AS((void)parse_length("abc"), stokeslab::cli::ConfigError);
    CHECK_THROWS_AS((void)parse_length("2pix"), stokeslab::cli::ConfigError);
    CHECK_THROWS_AS((void)parse_length(""), stokeslab::cli::ConfigError);
}
