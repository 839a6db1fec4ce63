#pragma once

#include "geocover/curve_branch.hpp"
#include "geocover/geometry.hpp"

#include <vector>

namespace geocover {

// A degenerate line paid for at `depth`, with the number of points it held then.
struct StampedLine {
    Flat line;
    int depth = 1;
    int richness = 0;
};

struct PlaneCoverResult {
    bool decision = false;
    std::vector<Plane3> witness;
    SearchStats stats;
    int depth = 0;
};

// gamma_0 = k^2 + k, gamma_i = k^2 / 2^i
Rational plane_gamma(int k, int i);
int plane_recursion_depth(int k);

// (t - m)^5 gamma < t^5
bool is_too_degenerate(int t, int m, const Rational& gamma);
bool is_too_degenerate(const Plane3& h, const std::vector<Point>& pts, int i, int k);
// m >= gamma - gamma^(4/5)
bool is_line_rich(int m, const Rational& gamma);
// a line stamped at depth j is ripe at depth i when NOT(gamma_i^5 >= 32 gamma_j^4)
bool is_ripe(int j, int i, int k);

std::vector<StampedLine> ripe_lines(const std::vector<StampedLine>& stamped, int i, int k);

// all choices of one plane per line: planes through the line and a point off
// it, or a plane through the line missing every point when there is no such point
std::vector<std::vector<Plane3>> extend_lines(const std::vector<Flat>& lines, const std::vector<Point>& pts);

// One budget partition <h1,l1,...,hr,lr>, starting at depth 1 on a kernelized set.
PlaneCoverResult pc_recursive(const std::vector<Point>& pts, int k, const std::vector<int>& partition,
                              const BranchConfig& config = {});

PlaneCoverResult plane_cover(const std::vector<Point>& pts, int k, const BranchConfig& config = {});

} // namespace geocover
