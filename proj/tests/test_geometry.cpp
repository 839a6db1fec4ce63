#include "support.hpp"

#include "geocover/errors.hpp"
#include "geocover/geometry.hpp"

#include <doctest.h>

#include <set>

using namespace geocover;
using namespace geocover::testing;

namespace {

const FamilySpec kLine = family_spec(FamilyKind::line2);
const FamilySpec kCircle = family_spec(FamilyKind::circle2);
const FamilySpec kParabola = family_spec(FamilyKind::vparabola2);

std::vector<Rational> coefs(const Curve& c) { return {c.coefficients().begin(), c.coefficients().end()}; }

} // namespace

TEST_CASE("rational parsing follows the fraction grammar")
{
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-4/6") == Rational(-2, 3));
    CHECK(format_rational(parse_rational("-4/6")) == "-2/3");
    CHECK(format_rational(parse_rational("10/5")) == "2");
    for (const char* bad : {"", "-", "1/0", "1/-2", "+1", "1.5", "1/02", " 1", "1/", "a"})
        CHECK_THROWS_AS(parse_rational(bad), InvalidInput);
}

TEST_CASE("curve_through examples")
{
    auto l = curve_through(kLine, {pt(0, 0), pt(1, 1)});
    REQUIRE(l.size() == 1);
    CHECK(coefs(l[0]) == std::vector<Rational>{1, -1, 0});

    auto c = curve_through(kCircle, {pt(0, 0), pt(2, 0), pt(0, 2)});
    REQUIRE(c.size() == 1);
    CHECK(coefs(c[0]) == std::vector<Rational>{1, 1, 2});

    auto p = curve_through(kParabola, {pt(0, 0), pt(1, 1), pt(2, 4)});
    REQUIRE(p.size() == 1);
    CHECK(coefs(p[0]) == std::vector<Rational>{1, 0, 0});

    CHECK(curve_through(kParabola, {pt(0, 0), pt(0, 1)}).empty());
    CHECK(curve_through(kCircle, {pt(0, 0), pt(1, 1), pt(2, 2)}).empty());
}

TEST_CASE("curve_covers examples")
{
    CHECK(curve_covers(Curve::line(1, -1, 0), pt(5, 5)));
    CHECK(curve_covers(Curve::circle(0, 0, 25), pt(3, 4)));
    CHECK_FALSE(curve_covers(Curve::vparabola(1, 0, 0), pt(2, 5)));
}

TEST_CASE("curves_intersect examples")
{
    auto a = curves_intersect(Curve::line(1, 0, 0), Curve::line(0, 1, 0));
    CHECK(a.points == std::vector<Point>{pt(0, 0)});
    auto b = curves_intersect(Curve::circle(0, 0, 25), Curve::circle(6, 0, 25));
    CHECK(std::set<Point>(b.points.begin(), b.points.end()) == std::set<Point>{pt(3, 4), pt(3, -4)});
    CHECK(curves_intersect(Curve::line(0, 1, 0), Curve::line(0, 1, -1)).cardinality() == 0);
}

TEST_CASE("richness examples")
{
    CHECK(richness(Curve::line(0, 1, 0), {pt(0, 0), pt(1, 0), pt(1, 1)}) == 2);
    CHECK(richness(Curve::line(0, 1, 0), {}) == 0);
    CHECK(richness(Curve::circle(0, 0, 25), {pt(3, 4), pt(5, 0), pt(0, 5), pt(1, 1)}) == 3);
}

TEST_CASE("enumerate_candidates examples")
{
    CHECK(enumerate_candidates({pt(0, 0), pt(1, 0), pt(0, 1)}, kLine).size() == 3);
    CHECK(enumerate_candidates({pt(0, 0), pt(1, 1), pt(2, 2)}, kLine).size() == 1);
    CHECK(enumerate_candidates(grid(2), kLine).size() == 6);
}

TEST_CASE("flat construction examples")
{
    CHECK(plane_through(pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0)) == Plane3(0, 0, 1, 0));
    Flat x_axis = line_through(pt(0, 0, 0), pt(1, 0, 0));
    CHECK(plane_through_line_point(x_axis, pt(0, 0, 1)) == Plane3(0, 1, 0, 0));
    CHECK_THROWS_AS(plane_through(pt(0, 0, 0), pt(1, 1, 1), pt(2, 2, 2)), InvalidInput);

    CHECK(affine_hull(std::vector<Point>{pt(0, 0, 0), pt(1, 0, 0)}) == x_axis);
    Flat z0 = affine_hull(std::vector<Flat>{x_axis, Flat::point(pt(0, 1, 0))});
    CHECK(z0.j() == 2);
    CHECK(plane_of(z0) == Plane3(0, 0, 1, 0));
    Flat origin = affine_hull(std::vector<Point>{pt(0, 0, 0)});
    CHECK(origin.j() == 0);
    CHECK(origin.contains(pt(0, 0, 0)));
}

TEST_CASE("max_collinear examples")
{
    auto r = max_collinear({pt(0, 0, 0), pt(1, 1, 1), pt(2, 2, 2), pt(0, 1, 0)});
    CHECK(r.count == 3);
    REQUIRE(r.line);
    CHECK(*r.line == line_through(pt(0, 0, 0), pt(1, 1, 1)));
    CHECK(max_collinear({pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)}).count == 2);
    auto none = max_collinear({});
    CHECK(none.count == 0);
    CHECK_FALSE(none.line);
}

TEST_CASE("duplicate points are rejected")
{
    CHECK_THROWS_AS(require_distinct({pt(1, 2), pt(1, 2)}, 2), InvalidInput);
    CHECK_THROWS_AS(require_distinct({pt(1, 2), pt(1, 2, 3)}, 2), InvalidInput);
}

TEST_CASE("property: canonical forms are idempotent and scale invariant")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        Rational a = random_rational(rng, 6), b = random_rational(rng, 6), c = random_rational(rng, 6);
        Rational s = random_rational(rng, 5);
        if (sgn(s) == 0)
            s = 3;
        if (sgn(a) != 0 || sgn(b) != 0) {
            Curve l = Curve::line(a, b, c);
            CHECK(Curve::line(a * s, b * s, c * s) == l);
            auto k = l.coefficients();
            CHECK(Curve::line(k[0], k[1], k[2]) == l);
        }
        if (sgn(a) != 0 || sgn(b) != 0 || sgn(c) != 0) {
            Plane3 h(a, b, c, s);
            auto k = h.coefficients();
            CHECK(Plane3(k[0] * s, k[1] * s, k[2] * s, k[3] * s) == h);
        }
        auto pts = random_points(rng, 3, 3, 4);
        Flat f = affine_hull(pts);
        CHECK(affine_hull(std::vector<Flat>{f}) == f);
        if (f.j() == 2)
            CHECK(Flat::from_plane(plane_of(f)) == f);
    }
}

TEST_CASE("property: curve_through round trip")
{
    std::mt19937_64 rng(12);
    for (auto family : {kLine, kCircle, kParabola}) {
        int made = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            std::set<Point> s;
            while (static_cast<int>(s.size()) < family.d)
                s.insert(Point{random_rational(rng, 8), random_rational(rng, 8)});
            std::vector<Point> pts(s.begin(), s.end());
            for (const auto& c : curve_through(family, pts)) {
                ++made;
                for (const auto& p : pts)
                    CHECK(curve_covers(c, p));
            }
        }
        CHECK(made > 500);
    }
}

TEST_CASE("property: two family curves meet in at most s points")
{
    std::mt19937_64 rng(13);
    for (auto family : {kLine, kCircle, kParabola})
        for (int trial = 0; trial < 20; ++trial) {
            auto cands = enumerate_candidates(random_points(rng, 8, 2, 3), family);
            for (std::size_t i = 0; i < cands.size(); ++i)
                for (std::size_t j = i + 1; j < cands.size(); ++j)
                    CHECK(curves_intersect(cands[i], cands[j]).cardinality() <= family.s);
        }
}

TEST_CASE("property: enumerate_candidates equals the naive d-subset loop")
{
    std::mt19937_64 rng(14);
    for (auto family : {kLine, kCircle, kParabola})
        for (int trial = 0; trial < 30; ++trial) {
            auto pts = random_points(rng, 7, 2, 3);
            std::set<Curve> naive;
            int n = static_cast<int>(pts.size());
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    if (family.d == 2) {
                        for (const auto& c : curve_through(family, {pts[a], pts[b]}))
                            naive.insert(c);
                        continue;
                    }
                    for (int c = b + 1; c < n; ++c)
                        for (const auto& cur : curve_through(family, {pts[a], pts[b], pts[c]}))
                            naive.insert(cur);
                }
            auto got = enumerate_candidates(pts, family);
            CHECK(std::set<Curve>(got.begin(), got.end()) == naive);
            CHECK(std::is_sorted(got.begin(), got.end()));
            for (const auto& c : got)
                CHECK(richness(c, pts) >= family.d);
        }
}

TEST_CASE("property: affine_hull is monotone")
{
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 300; ++trial) {
        auto pts = random_points(rng, 1 + static_cast<int>(rng() % 4), 3, 2);
        auto grown = pts;
        auto extra = random_points(rng, 1, 3, 2)[0];
        if (std::find(pts.begin(), pts.end(), extra) != pts.end())
            continue;
        grown.push_back(extra);
        Flat small = affine_hull(pts), big = affine_hull(grown);
        CHECK(flat_contains(big, small));
        CHECK(big.j() >= small.j());
    }
}
