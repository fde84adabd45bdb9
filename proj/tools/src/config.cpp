#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numbers>

namespace stokeslab::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!std::filesystem::is_regular_file(path) || !in) {
        throw ConfigError("config not found: " + path.string());
    }
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cut = line.find_first_of("#;");
        const std::string body = trim(cut == std::string::npos ? line : line.substr(0, cut));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": empty key");
        }
        std::replace(key.begin(), key.end(), '_', '-');
        out.emplace_back(key, value);
    }
    return out;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       const std::vector<std::string>& subcommands) {
    std::vector<std::string> rest;
    std::string config;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) {
                throw ConfigError("--config requires a path");
            }
            config = args[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            config = a.substr(9);
        } else {
            rest.push_back(a);
        }
    }
    if (config.empty()) {
        return rest;
    }
    const auto entries = read_config(config);
    auto sub = std::find_if(rest.begin() + std::min<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(rest.size())),
                            rest.end(), [&](const std::string& a) {
                                return std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end();
                            });
    if (sub == rest.end()) {
        throw ConfigError("--config needs a subcommand");
    }
    std::vector<std::string> injected;
    for (const auto& [k, v] : entries) {
        injected.push_back("--" + k + "=" + v);
    }
    rest.insert(sub + 1, injected.begin(), injected.end());
    return rest;
}

double parse_length(const std::string& text) {
    std::string t = trim(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    double factor = 1.0;
    if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
        factor = std::numbers::pi;
        t = trim(t.substr(0, t.size() - 2));
        if (!t.empty() && t.back() == '*') {
            t.pop_back();
        }
        if (t.empty()) {
            return factor;
        }
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError("invalid length '" + text + "'");
    }
    if (used != t.size()) {
        throw ConfigError("invalid length '" + text + "'");
    }
    return v * factor;
}

}  // namespace stokeslab::cli
