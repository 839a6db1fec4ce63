#include "support.hpp"

#include "geocover/errors.hpp"
#include "geocover/incl_excl.hpp"
#include "geocover/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace geocover;
using namespace geocover::testing;

namespace {

const FamilySpec kLine = family_spec(FamilyKind::line2);
const FamilySpec kCircle = family_spec(FamilyKind::circle2);
const FamilySpec kParabola = family_spec(FamilyKind::vparabola2);

ElementMask bits(std::initializer_list<int> ids)
{
    ElementMask m = 0;
    for (int i : ids)
        m |= ElementMask{1} << i;
    return m;
}

// number of subsets of x (the empty set included) that one object covers
std::uint64_t exhaustive_count(const IeGround& g, ElementMask x)
{
    std::uint64_t total = 0;
    for (ElementMask sub = x;; sub = (sub - 1) & x) {
        total += is_coverable(g, sub);
        if (sub == 0)
            break;
    }
    return total;
}

std::vector<Point> on_line_xy(int n)
{
    std::vector<Point> out;
    for (int i = 0; i < n; ++i)
        out.push_back(pt(i, 0));
    return out;
}

std::vector<Flat> mixed_flats(std::mt19937_64& rng, int n)
{
    auto pts = random_points(rng, n + 2, 3, 1);
    std::vector<Flat> out;
    for (int i = 0; i < n; ++i) {
        if (rng() % 4 == 0 && i + 1 < static_cast<int>(pts.size()))
            out.push_back(line_through(pts[i], pts[pts.size() - 1 - (rng() % 2)]));
        else
            out.push_back(Flat::point(pts[i]));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

TEST_CASE("representative examples")
{
    auto g = IeGround::curves({pt(0, 0), pt(1, 0), pt(2, 0)}, kLine);
    CHECK(representative(g, bits({0, 1, 2})) == std::vector<int>{0, 1});
    auto a = IeGround::anyflat_points({pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0)});
    CHECK(representative(a, bits({0, 1, 2})) == std::vector<int>{0, 1, 2});
    CHECK(representative(g, 0).empty());
}

TEST_CASE("q_count examples")
{
    auto g = IeGround::curves({pt(0, 0), pt(0, 1), pt(1, 0), pt(2, 0)}, kLine);
    // x-then-y order puts (0,0) first, (1,0) third
    CHECK(q_count(g, bits({0, 1, 2, 3}), {0, 2}) == 2);
    CHECK(q_count(g, bits({0, 1, 2, 3}), {0}) == 1);
    auto a = IeGround::anyflat_points({pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(1, 2, 0)});
    CHECK(q_count(a, bits({0, 1, 2, 3}), {0, 1, 2}) == 2);
}

TEST_CASE("c_count examples")
{
    CHECK(c_count(IeGround::curves({pt(0, 0), pt(1, 0), pt(0, 1)}, kLine), bits({0, 1, 2})) == 7);
    CHECK(c_count(IeGround::curves(on_line_xy(3), kLine), bits({0, 1, 2})) == 8);
    CHECK(c_count(IeGround::curves(on_line_xy(3), kLine), 0) == 1);
    std::mt19937_64 rng(31);
    auto g = IeGround::curves(random_points(rng, 10, 2, 3), kLine);
    CHECK(c_count(g, full_mask(10)) == exhaustive_count(g, full_mask(10)));
}

TEST_CASE("ie_decide examples")
{
    auto single = ie_decide(IeGround::curves({pt(0, 0)}, kLine), 1);
    CHECK(single.ie_sum == 1);
    CHECK(single.decision);
    auto tri = IeGround::curves({pt(0, 0), pt(1, 0), pt(0, 1)}, kLine);
    CHECK_FALSE(ie_decide(tri, 1).decision);
    CHECK(ie_decide(tri, 2).decision);
    CHECK(ie_decide(IeGround::curves(on_line_xy(3), kLine), 1).decision);

    Flat l = line_through(pt(0, 0, 5), pt(1, 0, 5));
    auto coplanar = IeGround::anyflat({Flat::point(pt(0, 0, 0)), Flat::point(pt(1, 0, 0)), l});
    CHECK(ie_decide(coplanar, 1).decision);
    Flat skew = line_through(pt(0, 0, 5), pt(0, 1, 5));
    auto apart = IeGround::anyflat({Flat::point(pt(0, 0, 0)), Flat::point(pt(1, 0, 0)), skew});
    CHECK_FALSE(ie_decide(apart, 1).decision);
}

TEST_CASE("ie_min_cover examples")
{
    CHECK(ie_min_cover(IeGround::curves(grid(3), kLine)) == 3);
    std::vector<Point> circle{pt(5, 0), pt(0, 5), pt(-5, 0), pt(3, 4), pt(-4, -3)};
    CHECK(ie_min_cover(IeGround::curves(circle, kCircle)) == 1);
    CHECK(ie_min_cover(IeGround::curves({pt(0, 0), pt(1, 0), pt(0, 1), pt(2, 3)}, kLine)) == 2);
}

TEST_CASE("extract cover examples pass the checker")
{
    auto col = extract_curve_cover(IeGround::curves(on_line_xy(3), kLine), 1);
    CHECK(col == std::vector<Curve>{Curve::line(0, 1, 0)});
    for (int n : {2, 3}) {
        auto pts = grid(n);
        auto cover = extract_curve_cover(IeGround::curves(pts, kLine), n);
        CHECK(check_cover(pts, kLine, {cover.begin(), cover.end()}, n));
    }
}

TEST_CASE("the ground-set cap is enforced")
{
    std::mt19937_64 rng(32);
    auto g = IeGround::curves(random_points(rng, 30, 2, 20), kLine);
    CHECK_THROWS_AS(ie_decide(g, 3), CapExceeded);
}

TEST_CASE("threaded sums match the sequential sum")
{
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = IeGround::curves(clustered_points(rng, 14, 4), kLine);
        auto index = build_index(g);
        for (int k = 1; k <= 4; ++k)
            CHECK(ie_sum(index, full_mask(g.size()), k, 1) == ie_sum(index, full_mask(g.size()), k, 4));
    }
}

TEST_CASE("property: ie sums are nonnegative and monotone in k, c is monotone")
{
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 60; ++trial) {
        auto family = std::vector<FamilySpec>{kLine, kCircle, kParabola}[trial % 3];
        auto g = IeGround::curves(random_points(rng, 4 + static_cast<int>(rng() % 7), 2, 2), family);
        auto index = build_index(g);
        ElementMask all = full_mask(g.size());
        BigInt prev = -1;
        for (int k = 0; k <= 5; ++k) {
            BigInt s = ie_sum(index, all, k);
            CHECK(s >= 0);
            CHECK(s >= prev);
            prev = s;
        }
        ElementMask sub = all & rng();
        CHECK(index.count(sub) <= index.count(all));
        CHECK(index.count(0) == 1);
        CHECK(BigInt(static_cast<unsigned long>(index.count(sub))) == c_count(g, sub));
    }
}

TEST_CASE("property: ie_decide agrees with the oracle")
{
    std::mt19937_64 rng(35);
    int mismatches = 0, runs = 0;
    for (auto family : {kLine, kCircle, kParabola})
        for (int trial = 0; trial < 70; ++trial) {
            auto pts = family.kind == FamilyKind::line2 ? clustered_points(rng, 3 + static_cast<int>(rng() % 8), 3)
                                                        : random_points(rng, 3 + static_cast<int>(rng() % 8), 2, 2);
            auto g = IeGround::curves(pts, family);
            for (int k = 1; k <= 4; ++k) {
                ++runs;
                bool ie = ie_decide(g, k).decision;
                mismatches += ie != oracle_decide(pts, family, k);
                if (ie) {
                    auto cover = extract_curve_cover(g, k);
                    CHECK(check_cover(pts, family, {cover.begin(), cover.end()}, k));
                }
            }
        }
    CHECK(runs >= 200);
    CHECK(mismatches == 0);
}

TEST_CASE("property: representatives partition the coverable subsets")
{
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + static_cast<int>(rng() % 7);
        IeGround base = trial % 2 == 0
                            ? IeGround::curves(random_points(rng, n, 2, 2),
                                               std::vector<FamilySpec>{kLine, kCircle, kParabola}[trial % 3])
                            : IeGround::anyflat(mixed_flats(rng, n));
        n = base.size();
        for (int ordering = 0; ordering < 3; ++ordering) {
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            if (ordering == 1)
                std::reverse(order.begin(), order.end());
            if (ordering == 2)
                std::shuffle(order.begin(), order.end(), rng);
            auto g = base.permuted(order);
            ElementMask x = ordering == 0 ? full_mask(n) : full_mask(n) & (rng() | 1);
            CHECK(c_count(g, x) == BigInt(static_cast<unsigned long>(exhaustive_count(g, x))));
            CHECK(build_index(g).count(x) == exhaustive_count(g, x));
        }
    }
}

TEST_CASE("property: any-flat extraction passes the checker")
{
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        auto pts = random_points(rng, 4 + static_cast<int>(rng() % 6), 3, 1);
        auto g = IeGround::anyflat_points(pts);
        for (int k = 1; k <= 3; ++k) {
            auto family = family_spec(FamilyKind::plane3, k);
            bool yes = ie_decide(g, k).decision;
            CHECK(yes == oracle_decide(pts, family, k));
            if (yes) {
                auto cover = extract_plane_cover(g, k);
                CHECK(check_cover(pts, family, {cover.begin(), cover.end()}, k));
            }
        }
    }
}
