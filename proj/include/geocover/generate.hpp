#pragma once

#include "geocover/instance.hpp"

#include <cstdint>
#include <string>

namespace geocover {

struct GenParams {
    std::string model;  // grid, on-curves, uniform-random, degenerate-plane
    FamilyKind family = FamilyKind::line2;
    int n = 3;      // grid side, or point count for uniform-random
    int k = 1;      // planted objects, or the instance budget
    int m = 0;      // points per planted object, 0 for the model default (4, or 9 line points)
    int noise = 0;  // extra uniform points
    int ghosts = 1; // off-line points per degenerate plane
    int range = 10; // coordinates drawn from [-range, range]
    std::uint64_t seed = 0;
};

Instance generate(const GenParams& params);

} // namespace geocover
