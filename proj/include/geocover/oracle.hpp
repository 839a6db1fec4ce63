#pragma once

#include "geocover/geometry.hpp"
#include "geocover/incl_excl.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace geocover {

// A covering object: a curve for planar families, a plane in R^3.
using CoverObject = std::variant<Curve, Plane3>;

struct CandidateSet {
    CoverObject object;
    ElementMask covered = 0;
};

struct OracleResult {
    int opt = 0;
    std::vector<CoverObject> witness;
};

struct OracleOptions {
    int cap = 16;
};

// Candidate sets of the exhaustive search: every maximal set of points that one
// family object covers, with dominated sets removed.
std::vector<CandidateSet> oracle_candidates(const std::vector<Point>& pts, const FamilySpec& family);

OracleResult oracle_min_cover(const std::vector<Point>& pts, const FamilySpec& family,
                              const OracleOptions& opts = {});
// witness of size <= k when one exists
std::optional<std::vector<CoverObject>> oracle_cover_within(const std::vector<Point>& pts,
                                                            const FamilySpec& family, int k,
                                                            const OracleOptions& opts = {});
bool oracle_decide(const std::vector<Point>& pts, const FamilySpec& family, int k,
                   const OracleOptions& opts = {});

int count_rich(const std::vector<Point>& pts, const FamilySpec& family, int gamma);

// Independent cover checker: at most k objects of the family, every point on one of them.
bool check_cover(const std::vector<Point>& pts, const FamilySpec& family,
                 const std::vector<CoverObject>& cover, int k);

bool object_covers(const CoverObject& obj, const Point& p);
std::string object_to_string(const CoverObject& obj);

} // namespace geocover
