#pragma once

#include "geocover/generate.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace geocover {

struct BenchRow {
    std::string model;
    int n = 0;
    int k = 0;
    std::string algorithm;
    std::string decision;  // yes, no, or cap
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    std::uint64_t candidates = 0;
    std::string naive_bound;  // C(candidates, k) as a decimal integer
    double wall_ms = 0;
    std::uint64_t seed = 0;
    std::string family;
    int size = 0;  // generator size parameter, groups rows of one instance
};

struct BenchReport {
    std::vector<BenchRow> rows;
    // instances on which two solvers within caps returned different decisions
    std::vector<std::string> disagreements;
};

// Suite: {"entries": [{"model", "family", "sizes", "algorithms", "repetitions",
// "seed", "ks", "m", "k", "noise", "ghosts", "range", "base_case_factor"}]}. Sizes feed the model's size
// parameter (grid side, uniform point count, or points per planted object).
BenchReport run_bench(const nlohmann::json& suite, int jobs = 1);

std::string bench_csv(const std::vector<BenchRow>& rows);

} // namespace geocover
