#pragma once

#include "geocover/geometry.hpp"
#include "geocover/kernel.hpp"
#include "geocover/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace geocover {

struct BranchConfig {
    // multiplier on K_i * log2(k) in the base case; unset means (d-1)/2 for
    // curves and 1 for planes
    std::optional<Rational> base_case_factor;
    std::optional<std::uint64_t> node_limit;
    int threads = 1;
    int ie_cap = 26;
    bool debug_checks = false;
    std::uint64_t kernel_seed = 0;
};

struct SearchStats {
    std::uint64_t nodes_expanded = 0;
    std::uint64_t leaves_ie = 0;
    std::uint64_t leaves_rejected = 0;
    std::uint64_t ie_subsets = 0;
    std::uint64_t candidates = 0;  // candidate objects generated over all nodes
    std::uint64_t partitions = 0;
    int max_depth = 0;
    // largest candidate list seen at each depth (index 0 is depth 1)
    std::vector<std::uint64_t> widest;
    double wall_ms = 0;

    void merge(const SearchStats& o);
};

struct CurveCoverResult {
    bool decision = false;
    std::vector<Curve> witness;
    SearchStats stats;
    int depth = 0;  // r, or 0 when the branching was not entered
};

int recursion_depth(int k, int d, int s);

// compositions of k into r parts, lexicographic
std::vector<int> first_partition(int k, int r);
bool next_partition(std::vector<int>& parts);
std::vector<std::vector<int>> budget_partitions(int k, int r);

// |P| < factor * K * log2(k), evaluated exactly
bool below_base_threshold(int points, int budget, int k, const Rational& factor);

std::vector<Curve> rich_poor_candidates(const std::vector<Point>& pts, const FamilySpec& family,
                                        const Rational& lo, const Rational& hi);

// One budget partition, starting at depth 1 on an already kernelized point
// set; k is the kernel's budget.
CurveCoverResult cc_recursive(const std::vector<Point>& pts, const FamilySpec& family, int k,
                              const std::vector<int>& partition, const BranchConfig& config = {});

CurveCoverResult curve_cover(const std::vector<Point>& pts, const FamilySpec& family, int k,
                             const BranchConfig& config = {});

} // namespace geocover
