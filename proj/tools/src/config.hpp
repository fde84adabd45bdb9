#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stokeslab::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key=value file. '#' and ';' start comments; blank lines are skipped.
/// Keys are returned in file order.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> read_config(const std::filesystem::path& path);

/// Replaces the --config argument with one --key=value argument per config
/// entry, placed right after the subcommand so later flags override them.
[[nodiscard]] std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                                     const std::vector<std::string>& subcommands);

/// Length value: a number, optionally followed by "pi" ("2pi", "0.5pi", "pi").
[[nodiscard]] double parse_length(const std::string& text);

}  // namespace stokeslab::cli
