#include "support.hpp"

#include "geocover/errors.hpp"
#include "geocover/oracle.hpp"

#include <doctest.h>

#include <limits>

using namespace geocover;
using namespace geocover::testing;

namespace {

const FamilySpec kLine = family_spec(FamilyKind::line2);
const FamilySpec kCircle = family_spec(FamilyKind::circle2);
const FamilySpec kParabola = family_spec(FamilyKind::vparabola2);

} // namespace

TEST_CASE("oracle_min_cover examples")
{
    auto g = oracle_min_cover(grid(3), kLine);
    CHECK(g.opt == 3);
    CHECK(check_cover(grid(3), kLine, g.witness, 3));
    std::vector<Point> circle{pt(5, 0), pt(0, 5), pt(-5, 0), pt(3, 4), pt(-4, -3), pt(4, -3)};
    CHECK(oracle_min_cover(circle, kCircle).opt == 1);
    CHECK(oracle_min_cover({pt(0, 0), pt(1, 0), pt(0, 1), pt(2, 3)}, kLine).opt == 2);
}

TEST_CASE("sub-d candidates: three collinear points need two circles")
{
    std::vector<Point> pts{pt(0, 0), pt(1, 0), pt(2, 0)};
    CHECK(oracle_min_cover(pts, kCircle).opt == 2);
    // parabolas cannot hold two points with one x
    CHECK(oracle_min_cover({pt(0, 0), pt(0, 1), pt(0, 2)}, kParabola).opt == 3);
}

TEST_CASE("count_rich examples")
{
    CHECK(count_rich(grid(3), kLine, 3) == 8);
    CHECK(count_rich(grid(3), kLine, 10) == 0);
    std::vector<Point> five{pt(0, 0), pt(1, 1), pt(2, 2), pt(3, 3), pt(4, 4)};
    CHECK(count_rich(five, kLine, 5) == 1);
}

TEST_CASE("check_cover rejects bad covers")
{
    auto pts = grid(2);
    std::vector<CoverObject> rows{Curve::line(0, 1, 0), Curve::line(0, 1, -1)};
    CHECK(check_cover(pts, kLine, rows, 2));
    CHECK_FALSE(check_cover(pts, kLine, rows, 1));
    CHECK_FALSE(check_cover(pts, kLine, {Curve::line(0, 1, 0)}, 2));
    CHECK_FALSE(check_cover(pts, kLine, {Curve::circle(0, 0, 1), Curve::line(0, 1, -1)}, 2));
}

TEST_CASE("the oracle cap is enforced")
{
    std::mt19937_64 rng(41);
    CHECK_THROWS_AS(oracle_min_cover(random_points(rng, 20, 2, 30), kLine), CapExceeded);
}

TEST_CASE("property: oracle decisions are monotone and witnesses are minimal")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 90; ++trial) {
        auto family = std::vector<FamilySpec>{kLine, kCircle, kParabola}[trial % 3];
        auto pts = random_points(rng, 3 + static_cast<int>(rng() % 7), 2, 2);
        auto best = oracle_min_cover(pts, family);
        CHECK(check_cover(pts, family, best.witness, best.opt));
        for (int k = 0; k <= 5; ++k)
            CHECK(oracle_decide(pts, family, k) == (k >= best.opt));
        // dropping any witness object leaves a point uncovered
        for (std::size_t drop = 0; drop < best.witness.size(); ++drop) {
            auto fewer = best.witness;
            fewer.erase(fewer.begin() + drop);
            CHECK_FALSE(check_cover(pts, family, fewer, best.opt));
        }
        int prev = std::numeric_limits<int>::max();
        for (int gamma = 1; gamma <= static_cast<int>(pts.size()) + 1; ++gamma) {
            int c = count_rich(pts, family, std::max(gamma, family.d));
            CHECK(c <= prev);
            prev = c;
        }
    }
}

TEST_CASE("property: plane oracle witnesses pass the checker")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        auto pts = random_points(rng, 4 + static_cast<int>(rng() % 7), 3, 2);
        auto best = oracle_min_cover(pts, family_spec(FamilyKind::plane3, 3));
        CHECK(check_cover(pts, family_spec(FamilyKind::plane3, 3), best.witness, best.opt));
        CHECK(best.opt <= (static_cast<int>(pts.size()) + 2) / 3);
    }
}
