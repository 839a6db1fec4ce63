#include "geocover/kernel.hpp"

#include "geocover/errors.hpp"
#include "geocover/tables.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>

namespace geocover {

CurveKernel curve_kernel(const std::vector<Point>& pts, const FamilySpec& family, int k)
{
    if (k < 0)
        throw InvalidInput("negative budget");
    CurveKernel out;
    CurveTable table(pts, family);
    PointMask alive = PointMask::first_n(table.size());
    int budget = k;
    while (alive.any()) {
        if (budget == 0)
            break;
        int best = -1, best_rich = 0;
        for (int c = 0; c < table.curve_count(); ++c) {
            int rich = table.mask(c).count_and(alive);
            if (rich > best_rich) {
                best = c;
                best_rich = rich;
            }
        }
        if (best < 0 || best_rich < family.s * budget + 1)
            break;
        out.forced.push_back(table.curve(best));
        alive -= table.mask(best);
        --budget;
    }
    alive.for_each([&](int i) { out.points.push_back(table.points()[i]); });
    out.reduced_k = budget;
    int remaining = static_cast<int>(out.points.size());
    if ((budget == 0 && remaining > 0) || remaining > family.s * budget * budget)
        out.verdict = KernelVerdict::rejected;
    return out;
}

namespace {

Vec3 vec(const Point& p)
{
    return {p[0], p[1], p[2]};
}

bool collinear(const Point& a, const Point& b, const Point& c)
{
    Rational ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
    Rational vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
    return uy * vz == uz * vy && uz * vx == ux * vz && ux * vy == uy * vx;
}

struct LineCount {
    Flat line;
    std::vector<int> members;  // ascending point positions
};

std::vector<LineCount> spanned_lines(const std::vector<Point>& pts)
{
    // a line is recorded from its lowest point, grouping the others by direction
    std::map<Flat, std::vector<int>> found;
    int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i) {
        std::map<Vec3, std::vector<int>> rays;
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            Vec3 v{pts[j][0] - pts[i][0], pts[j][1] - pts[i][1], pts[j][2] - pts[i][2]};
            Rational lead = sgn(v[0]) != 0 ? v[0] : (sgn(v[1]) != 0 ? v[1] : v[2]);
            for (auto& c : v)
                c /= lead;
            rays[v].push_back(j);
        }
        for (auto& [dir, on] : rays) {
            if (on.front() < i)
                continue;
            on.insert(on.begin(), i);
            found.emplace(line_through(pts[i], pts[on[1]]), std::move(on));
        }
    }
    std::vector<LineCount> out;
    for (auto& [l, on] : found)
        out.push_back({l, std::move(on)});
    return out;
}

class PlaneKernelizer {
public:
    PlaneKernelizer(std::vector<Point> pts, std::uint64_t seed) : pts_(std::move(pts)), rng_(seed) {}

    std::vector<Point>& points() { return pts_; }

    // every line ends with at most k+1 points
    void make_ready(int k)
    {
        while (true) {
            auto lines = spanned_lines(pts_);
            const LineCount* over = nullptr;
            for (const auto& lc : lines) {
                if (static_cast<int>(lc.members.size()) <= k + 1)
                    continue;
                if (!over || lc.members.size() > over->members.size())
                    over = &lc;
            }
            if (!over)
                return;
            int victim = over->members.back();
            std::vector<Flat> collapsing;
            for (const auto& lc : lines)
                if (lc.line != over->line && static_cast<int>(lc.members.size()) == k + 1 &&
                    std::binary_search(lc.members.begin(), lc.members.end(), victim))
                    collapsing.push_back(lc.line);
            pts_.erase(pts_.begin() + victim);
            for (const auto& l : collapsing)
                pts_.push_back(general_position_point(l));
        }
    }

private:
    Point general_position_point(const Flat& line)
    {
        const Vec3& base = line.base();
        const Vec3& dir = line.basis().front();
        std::int64_t range = 8 + static_cast<std::int64_t>(pts_.size());
        while (true) {
            std::uniform_int_distribution<std::int64_t> pick(-range, range);
            for (int attempt = 0; attempt < 64; ++attempt) {
                Rational t = Rational(static_cast<long>(pick(rng_)));
                Point y{base[0] + t * dir[0], base[1] + t * dir[1], base[2] + t * dir[2]};
                if (acceptable(y, line))
                    return y;
            }
            range *= 2;
        }
    }

    // y must be new and off every line through two points that are not both on `line`.
    // Points off `line` see y along pairwise distinct directions exactly when that holds.
    bool acceptable(const Point& y, const Flat& line) const
    {
        std::set<Vec3> directions;
        for (const auto& p : pts_) {
            if (p == y)
                return false;
            if (line.contains(p))
                continue;
            Vec3 v{p[0] - y[0], p[1] - y[1], p[2] - y[2]};
            Rational lead = sgn(v[0]) != 0 ? v[0] : (sgn(v[1]) != 0 ? v[1] : v[2]);
            for (auto& c : v)
                c /= lead;
            if (!directions.insert(v).second)
                return false;
        }
        return true;
    }

    std::vector<Point> pts_;
    std::mt19937_64 rng_;
};

// The plane holding the most points, earliest in canonical order on ties. A plane
// with t points is met by t choose 3 triples, so triple counts rank planes.
std::pair<std::optional<Plane3>, int> richest_plane(const std::vector<Point>& pts)
{
    std::map<Plane3, long> triples;
    int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Flat l = line_through(pts[i], pts[j]);
            for (int m = j + 1; m < n; ++m)
                if (!l.contains(pts[m]))
                    ++triples[plane_through_line_point(l, pts[m])];
        }
    std::optional<Plane3> best;
    long most = 0;
    for (const auto& [h, c] : triples)
        if (c > most) {
            best = h;
            most = c;
        }
    if (!best)
        return {std::nullopt, 0};
    return {best, richness(*best, pts)};
}

} // namespace

PlaneKernel plane_kernel_r3(const std::vector<Point>& input, int k, std::uint64_t rng_seed)
{
    if (k < 0)
        throw InvalidInput("negative budget");
    require_distinct(input, 3);
    PlaneKernel out;
    PlaneKernelizer state(input, rng_seed);
    auto& pts = state.points();
    int budget = k;
    while (!pts.empty() && budget > 0) {
        // make_ready keeps the affine hull, and with one plane left the hull decides:
        // a plane is forced, a solid is rejected below. This skips the readying,
        // which doubles the set per trimmed point when every pair is a full line.
        if (budget == 1) {
            Flat hull = affine_hull(pts);
            if (hull.j() == 3)
                break;
            if (hull.j() == 2) {
                out.forced.push_back(plane_of(hull));
                pts.clear();
                --budget;
                break;
            }
        }
        state.make_ready(budget);
        auto [best, best_rich] = richest_plane(pts);
        if (!best || best_rich < budget * (budget + 1) + 1)
            break;
        std::vector<Point> rest;
        for (const auto& p : pts)
            if (!flat_contains(*best, p))
                rest.push_back(p);
        out.forced.push_back(*best);
        pts = std::move(rest);
        --budget;
    }
    out.points = pts;
    out.reduced_k = budget;
    int remaining = static_cast<int>(pts.size());
    if ((budget == 0 && remaining > 0) || remaining > budget * budget * budget + budget * budget)
        out.verdict = KernelVerdict::rejected;
    return out;
}

} // namespace geocover
