#pragma once

#include "geocover/geometry.hpp"

#include <random>
#include <set>
#include <vector>

namespace geocover::testing {

inline Point pt(long x, long y) { return Point{Rational(x), Rational(y)}; }
inline Point pt(long x, long y, long z) { return Point{Rational(x), Rational(y), Rational(z)}; }

// distinct integer points in [-range, range]^dim; small ranges give many collinear triples
inline std::vector<Point> random_points(std::mt19937_64& rng, int n, int dim, int range)
{
    std::set<Point> seen;
    std::vector<Point> out;
    while (static_cast<int>(out.size()) < n) {
        std::vector<Rational> c;
        for (int i = 0; i < dim; ++i)
            c.emplace_back(static_cast<long>(rng() % (2 * range + 1)) - range);
        Point p(std::move(c));
        if (seen.insert(p).second)
            out.push_back(p);
    }
    return out;
}

inline Rational random_rational(std::mt19937_64& rng, int range)
{
    Rational q(static_cast<long>(rng() % (2 * range + 1)) - range, static_cast<long>(rng() % 5) + 1);
    q.canonicalize();
    return q;
}

// points on a few random lines of small slope, plus loose points
inline std::vector<Point> clustered_points(std::mt19937_64& rng, int n, int range)
{
    std::set<Point> seen;
    std::vector<Point> out;
    int lines = 1 + static_cast<int>(rng() % 3);
    std::vector<std::array<long, 4>> shape;
    for (int l = 0; l < lines; ++l)
        shape.push_back({static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2,
                         static_cast<long>(rng() % 3) - 1, static_cast<long>(rng() % 2) + 1});
    int tries = 0;
    while (static_cast<int>(out.size()) < n && ++tries < 10000) {
        Point p;
        if (rng() % 4 == 0) {
            p = pt(static_cast<long>(rng() % (2 * range + 1)) - range, static_cast<long>(rng() % (2 * range + 1)) - range);
        } else {
            const auto& s = shape[rng() % shape.size()];
            long t = static_cast<long>(rng() % (2 * range + 1)) - range;
            p = pt(s[0] + t * s[3], s[1] + t * s[2]);
        }
        if (seen.insert(p).second)
            out.push_back(p);
    }
    return out;
}

inline std::vector<Point> grid(int n)
{
    std::vector<Point> out;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            out.push_back(pt(x, y));
    return out;
}

} // namespace geocover::testing
