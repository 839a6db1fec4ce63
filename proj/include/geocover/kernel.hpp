#pragma once

#include "geocover/geometry.hpp"

#include <cstdint>
#include <vector>

namespace geocover {

enum class KernelVerdict { reduced, rejected };

template <class Object>
struct KernelResult {
    std::vector<Point> points;
    int reduced_k = 0;
    std::vector<Object> forced;
    KernelVerdict verdict = KernelVerdict::reduced;

    bool rejected() const { return verdict == KernelVerdict::rejected; }
};

using CurveKernel = KernelResult<Curve>;
using PlaneKernel = KernelResult<Plane3>;

CurveKernel curve_kernel(const std::vector<Point>& pts, const FamilySpec& family, int k);

// Trims heavy lines to k+1 points (re-adding general-position points on lines
// that lose heaviness as a side effect), forces planes with >= k(k+1)+1 points,
// and rejects above k^3+k^2 points.
PlaneKernel plane_kernel_r3(const std::vector<Point>& pts, int k, std::uint64_t rng_seed = 0);

} // namespace geocover
