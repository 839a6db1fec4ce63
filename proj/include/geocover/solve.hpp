#pragma once

#include "geocover/instance.hpp"
#include "geocover/oracle.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace geocover {

struct SolveOptions {
    std::string algorithm = "auto";  // ie, branch, oracle, auto
    std::optional<int> k;            // overrides the instance budget
    bool min = false;
    bool witness = false;
    bool verify = false;
    int threads = 1;
    std::optional<Rational> base_case_factor;
    bool timing = false;
    int ie_cap = 26;
    int oracle_cap = 16;
    std::uint64_t kernel_seed = 0;
};

struct SolveStats {
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    std::uint64_t ie_subsets = 0;
    std::uint64_t candidates = 0;
    double wall_ms = 0;
};

struct SolveResult {
    std::string algorithm;  // resolved, never "auto"
    int k = 0;
    bool decision = false;
    std::optional<int> opt;
    std::optional<std::vector<CoverObject>> witness;
    std::optional<bool> oracle_agrees;
    SolveStats stats;
};

std::string resolve_algorithm(const std::string& requested, int n);

// throws VerificationMismatch when --verify disagrees or a witness fails the checker
SolveResult solve(const Instance& inst, const SolveOptions& opts);

nlohmann::json object_json(const CoverObject& obj);
nlohmann::json result_record(const Instance& inst, const SolveOptions& opts, const SolveResult& res);

// Kernelized copy of the instance; forced objects and the verdict go to metadata.
Instance kernelize_instance(const Instance& inst, int k, std::uint64_t seed = 0);

} // namespace geocover
