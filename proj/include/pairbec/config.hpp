#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pairbec/mesh.hpp"

namespace pairbec {

// Sweep configuration shared by all CLI commands.  Values come from an
// optional key=value file plus command-line overrides; unknown keys are
// rejected so typos cannot silently fall back to defaults.

struct RunConfig {
    double d = 1.0;
    std::vector<double> alpha = {0.0};  // inf allowed
    std::vector<double> L = {20.0};
    int m = 10;
    double beta = 1.0;
    std::vector<double> rho = {0.1};
    int k = 8;
    double tol = 1e-8;
    std::string out;  // empty: write CSV to stdout only
    std::uint64_t seed = 1234;
    int threads = 0;  // 0: leave the OpenMP default
    std::size_t node_budget = kDefaultNodeBudget;
    int max_iterations = 5000;

    // Keys explicitly set by file or command line, in application order;
    // lets commands supply smarter defaults for untouched parameters.
    std::vector<std::string> provided_keys;
};

// Config file: one `key = value` per line, '#' comments, blank lines ignored.
// Keys: d, alpha, L, m, beta, rho, k, tol, out, seed, threads, node-budget,
// max-iterations.  List values are comma separated; alpha accepts `inf`.
RunConfig parse_config_file(const std::string& path);

void apply_config_key(RunConfig& config, const std::string& key,
                      const std::string& value);

// Sorts the sweep lists (deduplicated; output rows are ordered by parameter
// tuple) and checks the invariants: positive d/beta/rho/tol, L > d, m >= 2,
// k >= 1, alpha >= 0.
void finalize_config(RunConfig& config);

}
