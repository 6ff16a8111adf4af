#include "pairbec/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "pairbec/errors.hpp"

namespace pairbec {

namespace {

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (value.empty())
        throw InputError("config key '" + key + "' has an empty value");
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size())
        throw InputError("config key '" + key + "': cannot parse number '" +
                         value + "'");
    if (std::isnan(v))
        throw InputError("config key '" + key + "' must not be nan");
    return v;
}

long long parse_int(const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (value.empty())
        throw InputError("config key '" + key + "' has an empty value");
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size())
        throw InputError("config key '" + key + "': cannot parse integer '" +
                         value + "'");
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& raw) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= raw.size()) {
        std::size_t comma = raw.find(',', start);
        if (comma == std::string::npos) comma = raw.size();
        out.push_back(parse_double(key, raw.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

void sort_unique(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

void apply_config_key(RunConfig& config, const std::string& key,
                      const std::string& value) {
    if (key == "d")
        config.d = parse_double(key, value);
    else if (key == "alpha")
        config.alpha = parse_list(key, value);
    else if (key == "L")
        config.L = parse_list(key, value);
    else if (key == "m")
        config.m = static_cast<int>(parse_int(key, value));
    else if (key == "beta")
        config.beta = parse_double(key, value);
    else if (key == "rho")
        config.rho = parse_list(key, value);
    else if (key == "k")
        config.k = static_cast<int>(parse_int(key, value));
    else if (key == "tol")
        config.tol = parse_double(key, value);
    else if (key == "out")
        config.out = trim(value);
    else if (key == "seed")
        config.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "threads")
        config.threads = static_cast<int>(parse_int(key, value));
    else if (key == "node-budget") {
        const long long budget = parse_int(key, value);
        if (budget < 1) throw InputError("node-budget must be positive");
        config.node_budget = static_cast<std::size_t>(budget);
    } else if (key == "max-iterations")
        config.max_iterations = static_cast<int>(parse_int(key, value));
    else
        throw InputError("unknown config key '" + key + "'");
    config.provided_keys.push_back(key);
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    RunConfig config;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("config line " + std::to_string(lineno) +
                             " is not of the form key = value");
        apply_config_key(config, trim(line.substr(0, eq)),
                         trim(line.substr(eq + 1)));
    }
    return config;
}

void finalize_config(RunConfig& config) {
    sort_unique(config.alpha);
    sort_unique(config.L);
    sort_unique(config.rho);
    if (!(config.d > 0.0) || !std::isfinite(config.d))
        throw InputError("d must be positive and finite");
    if (config.alpha.empty()) throw InputError("alpha list is empty");
    for (double a : config.alpha)
        if (a < 0.0) throw InputError("alpha values must be >= 0 (or inf)");
    if (config.L.empty()) throw InputError("L list is empty");
    for (double L : config.L)
        if (!(L > config.d) || !std::isfinite(L))
            throw InputError("every L must be finite and exceed d");
    if (config.m < 2) throw InputError("m must be at least 2");
    if (!(config.beta > 0.0)) throw InputError("beta must be positive");
    if (config.rho.empty()) throw InputError("rho list is empty");
    for (double r : config.rho)
        if (!(r > 0.0) || !std::isfinite(r))
            throw InputError("rho values must be positive and finite");
    if (config.k < 1) throw InputError("k must be at least 1");
    if (!(config.tol > 0.0)) throw InputError("tol must be positive");
    if (config.threads < 0) throw InputError("threads must be >= 0");
    if (config.max_iterations < 1)
        throw InputError("max-iterations must be positive");
}

}  // namespace pairbec
