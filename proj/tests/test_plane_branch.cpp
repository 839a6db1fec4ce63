#include "support.hpp"

#include "geocover/generate.hpp"
#include "geocover/oracle.hpp"
#include "geocover/plane_branch.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace geocover;
using namespace geocover::testing;

namespace {

FamilySpec planes(int k) { return family_spec(FamilyKind::plane3, k); }

std::vector<CoverObject> objects(const std::vector<Plane3>& hs) { return {hs.begin(), hs.end()}; }

bool plane_has_line(const Plane3& h, const Flat& line)
{
    return flat_contains(h, Point{line.base()[0], line.base()[1], line.base()[2]}) &&
           flat_contains(h, Point{line.base()[0] + line.basis()[0][0], line.base()[1] + line.basis()[0][1],
                                  line.base()[2] + line.basis()[0][2]});
}

// ten points in general position on z = 0 and ten on x = 100
std::vector<Point> two_clusters()
{
    std::vector<Point> out;
    for (int t = 0; t < 10; ++t) {
        out.push_back(pt(t, t * t, 0));
        out.push_back(pt(100, t, t * t + 1));
    }
    return out;
}

} // namespace

TEST_CASE("is_too_degenerate examples")
{
    CHECK(is_too_degenerate(10, 9, 16));
    CHECK_FALSE(is_too_degenerate(10, 2, 16));
    for (int t : {1, 5, 40})
        for (int g : {1, 7, 1000})
            CHECK(is_too_degenerate(t, t, g));
}

TEST_CASE("plane gammas and ripeness")
{
    CHECK(plane_gamma(4, 0) == 20);
    CHECK(plane_gamma(4, 3) == 2);
    CHECK(plane_gamma(3, 1) == Rational(9, 2));
    CHECK(ripe_lines({}, 2, 16).empty());
    // a line stamped at depth 1 is not ripe at its own depth for k = 16
    CHECK_FALSE(is_ripe(1, 1, 16));
    CHECK(is_ripe(1, 2, 16));
    for (int j = 1; j <= 3; ++j) {
        bool seen = false;
        for (int i = j; i <= 12; ++i) {
            if (seen)
                CHECK(is_ripe(j, i, 64));
            seen = seen || is_ripe(j, i, 64);
        }
        CHECK(seen);
    }
    Flat x_axis = line_through(pt(0, 0, 0), pt(1, 0, 0));
    std::vector<StampedLine> stamped{{x_axis, 1, 5}, {line_through(pt(0, 0, 0), pt(0, 1, 0)), 3, 5}};
    auto ripe = ripe_lines(stamped, 2, 16);
    REQUIRE(ripe.size() == 1);
    CHECK(ripe[0].line == x_axis);
}

TEST_CASE("is_line_rich uses the exact fifth-power test")
{
    // gamma = 32: gamma - gamma^(4/5) = 32 - 16 = 16
    CHECK(is_line_rich(16, 32));
    CHECK_FALSE(is_line_rich(15, 32));
    CHECK(is_line_rich(40, 32));
}

TEST_CASE("extend_lines examples")
{
    Flat x_axis = line_through(pt(0, 0, 0), pt(1, 0, 0));
    auto one = extend_lines({x_axis}, {pt(0, 0, 1)});
    REQUIRE(one.size() == 1);
    CHECK(one[0] == std::vector<Plane3>{Plane3(0, 1, 0, 0)});

    auto fallback = extend_lines({x_axis}, {});
    REQUIRE(fallback.size() == 1);
    REQUIRE(fallback[0].size() == 1);
    CHECK(plane_has_line(fallback[0][0], x_axis));

    // points on the line itself leave only the fallback, which must miss them
    std::vector<Point> on_axis{pt(2, 0, 0), pt(5, 0, 0)};
    auto missed = extend_lines({x_axis}, on_axis);
    REQUIRE(missed.size() == 1);
    CHECK(plane_has_line(missed[0][0], x_axis));

    Flat skew = line_through(pt(0, 0, 5), pt(0, 1, 5));
    std::vector<Point> two{pt(3, 7, 1), pt(-2, 4, 9)};
    auto combos = extend_lines({x_axis, skew}, two);
    CHECK(combos.size() <= 4);
    CHECK(combos.size() >= 1);
    std::set<std::vector<Plane3>> distinct(combos.begin(), combos.end());
    CHECK(distinct.size() == combos.size());
    for (const auto& c : combos) {
        REQUIRE(c.size() == 2);
        CHECK(plane_has_line(c[0], x_axis));
        CHECK(plane_has_line(c[1], skew));
    }
}

TEST_CASE("plane_cover examples")
{
    auto clusters = two_clusters();
    auto yes = plane_cover(clusters, 2);
    CHECK(yes.decision);
    CHECK(check_cover(clusters, planes(2), objects(yes.witness), 2));
    CHECK_FALSE(plane_cover(clusters, 1).decision);

    // nine points on a line inside z = 0 plus three more
    std::vector<Point> degenerate;
    for (int t = 0; t < 9; ++t)
        degenerate.push_back(pt(t, 0, 0));
    for (auto p : {pt(0, 3, 0), pt(1, 2, 4), pt(5, -1, 7)})
        degenerate.push_back(p);
    for (int k = 1; k <= 3; ++k)
        CHECK(plane_cover(degenerate, k).decision == oracle_decide(degenerate, planes(k), k));

    std::vector<Point> three;
    for (int t = 0; t < 8; ++t) {
        three.push_back(pt(t, t * t, 0));
        three.push_back(pt(50, t, t * t + 1));
        three.push_back(pt(t + 20, t * t + t + 23, t * t + 3));
    }
    auto r3 = plane_cover(three, 3);
    CHECK(r3.decision);
    CHECK(check_cover(three, planes(3), objects(r3.witness), 3));

    CHECK_FALSE(plane_cover({pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)}, 1).decision);
    CHECK(plane_cover({}, 0).decision);
}

TEST_CASE("pc_recursive accepts two clusters on some partition")
{
    // six general-position points on each of two planes form a kernel for k = 2
    std::vector<Point> pts;
    for (int t = 0; t < 6; ++t) {
        pts.push_back(pt(t, t * t, 0));
        pts.push_back(pt(100, t, t * t + 1));
    }
    REQUIRE(plane_kernel_r3(pts, 2, 0).points.size() == pts.size());
    int r = plane_recursion_depth(2);
    REQUIRE(r >= 1);
    BranchConfig config;
    config.debug_checks = true;
    bool any = false;
    for (const auto& part : budget_partitions(2, 2 * r)) {
        auto res = pc_recursive(pts, 2, part, config);
        if (res.decision) {
            any = true;
            CHECK(check_cover(pts, planes(2), objects(res.witness), 2));
        }
    }
    CHECK(any);

    // moving one point off both planes makes two planes too few
    pts.back() = pt(7, -3, 11);
    REQUIRE_FALSE(oracle_decide(pts, planes(2), 2));
    for (const auto& part : budget_partitions(2, 2 * r))
        CHECK_FALSE(pc_recursive(pts, 2, part, config).decision);
}

TEST_CASE("property: is_too_degenerate matches a floating evaluation away from the boundary")
{
    std::mt19937_64 rng(61);
    int compared = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int t = 1 + static_cast<int>(rng() % 200);
        int m = static_cast<int>(rng() % (t + 1));
        Rational gamma(static_cast<long>(1 + rng() % 4000), static_cast<long>(1 + rng() % 16));
        gamma.canonicalize();
        if (gamma < 1)
            gamma = 1;
        long double g = gamma.get_d();
        long double delta = 1.0L - std::pow(g, -0.2L);
        long double bound = delta * t;
        if (std::fabs(bound - m) < 1e-9L * (1 + t))
            continue;
        ++compared;
        CHECK(is_too_degenerate(t, m, gamma) == !(m <= bound));
    }
    CHECK(compared >= 990);
}

TEST_CASE("property: k at least a third of n general-position points is always yes")
{
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 4 + static_cast<int>(rng() % 9);
        auto pts = random_points(rng, n, 3, 50);
        int k = (n + 2) / 3;
        auto r = plane_cover(pts, k);
        CHECK(r.decision);
        CHECK(check_cover(pts, planes(k), objects(r.witness), k));
    }
}

TEST_CASE("property: plane_cover agrees with the oracle")
{
    std::mt19937_64 rng(63);
    BranchConfig config;
    config.debug_checks = true;
    BranchConfig deep = config;
    deep.base_case_factor = Rational(0);
    int runs = 0, degenerate = 0, mismatches = 0, branched = 0;
    for (int trial = 0; trial < 120; ++trial) {
        std::vector<Point> pts;
        if (trial % 3 == 0) {
            GenParams g;
            g.model = "degenerate-plane";
            g.family = FamilyKind::plane3;
            g.k = 1 + static_cast<int>(rng() % 2);
            g.m = 3 + static_cast<int>(rng() % 3);
            g.ghosts = 1 + static_cast<int>(rng() % 2);
            g.range = 4;
            g.seed = rng();
            pts = generate(g).points;
            if (pts.size() > 12)
                pts.resize(12);
            ++degenerate;
        } else {
            pts = random_points(rng, 4 + static_cast<int>(rng() % 9), 3, 1 + static_cast<int>(rng() % 2));
        }
        for (int k = 1; k <= 3; ++k) {
            ++runs;
            bool oracle = oracle_decide(pts, planes(k), k);
            for (const auto& cfg : {config, deep}) {
                auto r = plane_cover(pts, k, cfg);
                mismatches += r.decision != oracle;
                branched += r.depth > 0;
                if (r.decision)
                    CHECK(check_cover(pts, planes(k), objects(r.witness), k));
            }
        }
    }
    CHECK(runs >= 300);
    CHECK(degenerate >= 25);
    CHECK(branched >= 50);
    CHECK(mismatches == 0);
}
