#pragma once

#include "geocover/geometry.hpp"
#include "geocover/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace geocover {

using ElementMask = std::uint64_t;
inline constexpr int kMaxIeElements = 63;

enum class IeMode { curves, anyflat };

// Ground set of one IE computation. The ordering pi is the index order.
struct IeGround {
    IeMode mode = IeMode::curves;
    FamilySpec family;
    std::vector<Point> points;  // curves mode
    std::vector<Flat> flats;    // anyflat mode (points enter as 0-flats)

    static IeGround curves(std::vector<Point> pts, const FamilySpec& family);
    static IeGround anyflat(std::vector<Flat> elements);
    static IeGround anyflat_points(const std::vector<Point>& pts);

    int size() const;
    // reorder so that element order[i] comes i-th
    IeGround permuted(const std::vector<int>& order) const;
};

// A representative R and the elements that may join it without changing the
// representative: every coverable set of the ground is R + (subset of eligible)
// for exactly one entry.
struct RepresentativeEntry {
    ElementMask members = 0;
    ElementMask eligible = 0;
    friend bool operator==(const RepresentativeEntry&, const RepresentativeEntry&) = default;
};

class CoverIndex {
public:
    CoverIndex() = default;
    CoverIndex(int size, std::vector<RepresentativeEntry> entries);

    int size() const { return size_; }
    const std::vector<RepresentativeEntry>& entries() const { return entries_; }
    // number of coverable subsets of `subset`, the empty set included
    std::uint64_t count(ElementMask subset) const;

private:
    int size_ = 0;
    std::vector<RepresentativeEntry> entries_;
};

struct CurveIncidence {
    int size = 0;
    int s = 1;
    // is the tuple (ascending element ids, size <= s+1) covered by one curve
    std::function<bool(const std::vector<int>&)> coverable;
    // all ground elements on the unique curve through a coverable (s+1)-tuple
    std::function<ElementMask(const std::vector<int>&)> on_curve;
};
CoverIndex build_curve_index(const CurveIncidence& inc);

// Ops must provide: Hull hull(int e); Hull extend(const Hull&, int e);
// int dim(const Hull&) (3 for the whole space); bool contains(const Hull&, int e).
template <class Ops>
CoverIndex build_flat_index(int n, const Ops& ops);

CoverIndex build_index(const IeGround& ground);

// geometric reference versions of the counting primitives
std::vector<int> representative(const IeGround& ground, ElementMask q);
BigInt q_count(const IeGround& ground, ElementMask x, const std::vector<int>& rep);
BigInt c_count(const IeGround& ground, ElementMask x);
bool is_coverable(const IeGround& ground, ElementMask q);

struct IeOptions {
    int cap = 26;
    int threads = 1;
};

struct IeResult {
    bool decision = false;
    BigInt ie_sum;
    std::uint64_t subsets = 0;
};

// signed sum over X subset of `ground` of (-1)^|X| c(ground \ X)^k
BigInt ie_sum(const CoverIndex& index, ElementMask ground, int k, int threads = 1);

IeResult ie_decide(const IeGround& ground, int k, const IeOptions& opts = {});
IeResult ie_decide(const CoverIndex& index, ElementMask ground, int k, const IeOptions& opts = {});

int ie_min_cover(const IeGround& ground, const IeOptions& opts = {});
int ie_min_cover(const CoverIndex& index, ElementMask ground, int threads = 1);

// Self-reduction: candidates are covered-sets (over ground elements), tried in
// the given order. Returns the positions of the chosen candidates, or nullopt
// when ie_decide says no.
std::optional<std::vector<int>> extract_cover_ids(const CoverIndex& index, ElementMask ground,
                                                  const std::vector<ElementMask>& candidates,
                                                  int k, int threads = 1);

std::vector<Curve> extract_curve_cover(const IeGround& ground, int k, const IeOptions& opts = {});
std::vector<Plane3> extract_plane_cover(const IeGround& ground, int k, const IeOptions& opts = {});

inline ElementMask full_mask(int n)
{
    return n >= 64 ? ~ElementMask{0} : (ElementMask{1} << n) - 1;
}

// ---------------------------------------------------------------- template body

template <class Ops>
CoverIndex build_flat_index(int n, const Ops& ops)
{
    auto bit = [](int i) { return ElementMask{1} << i; };
    auto above = [&](int i) { return full_mask(n) & ~full_mask(i + 1); };
    auto between = [&](int lo, int hi) { return full_mask(hi) & ~full_mask(lo + 1); };
    auto inside = [&](const auto& h) {
        ElementMask m = 0;
        for (int e = 0; e < n; ++e)
            if (ops.contains(h, e))
                m |= bit(e);
        return m;
    };
    std::vector<RepresentativeEntry> entries;
    for (int r1 = 0; r1 < n; ++r1) {
        auto h1 = ops.hull(r1);
        if (ops.dim(h1) > 2)
            continue;
        ElementMask in1 = inside(h1);
        entries.push_back({bit(r1), in1 & above(r1)});
        for (int r2 = r1 + 1; r2 < n; ++r2) {
            if (in1 & bit(r2))
                continue;
            auto h2 = ops.extend(h1, r2);
            if (ops.dim(h2) > 2)
                continue;
            ElementMask in2 = inside(h2);
            ElementMask low = in1 & between(r1, r2);
            entries.push_back({bit(r1) | bit(r2), low | (in2 & above(r2))});
            for (int r3 = r2 + 1; r3 < n; ++r3) {
                if (in2 & bit(r3))
                    continue;
                auto h3 = ops.extend(h2, r3);
                if (ops.dim(h3) > 2)
                    continue;
                ElementMask in3 = inside(h3);
                entries.push_back({bit(r1) | bit(r2) | bit(r3),
                                   low | (in2 & between(r2, r3)) | (in3 & above(r3))});
            }
        }
    }
    return CoverIndex(n, std::move(entries));
}

} // namespace geocover
