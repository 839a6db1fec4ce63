#include "geocover/tables.hpp"

#include "geocover/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace geocover {

namespace {

void check_capacity(int n)
{
    if (n > PointMask::kCapacity)
        throw CapExceeded("point set of " + std::to_string(n) + " points exceeds the branch capacity of " +
                          std::to_string(PointMask::kCapacity));
}

template <class T>
std::vector<int> canonical_order(const std::vector<T>& objs)
{
    std::vector<int> order(objs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return objs[a] < objs[b]; });
    return order;
}

} // namespace

// ---------------------------------------------------------------- CurveTable

CurveTable::CurveTable(std::vector<Point> pts, const FamilySpec& family)
    : family_(family), points_(std::move(pts))
{
    int n = size();
    check_capacity(n);
    require_distinct(points_, 2);
    std::map<Curve, int> ids;
    std::vector<Curve> curves;
    std::vector<PointMask> masks;
    auto record = [&](const std::vector<int>& tuple) {
        std::uint32_t kk = key(tuple);
        if (tuple_curve_.count(kk))
            return;
        std::vector<Point> sel;
        for (int i : tuple)
            sel.push_back(points_[i]);
        auto through = curve_through(family_, sel);
        if (through.empty()) {
            tuple_curve_[kk] = -1;
            return;
        }
        const Curve& c = through.front();
        auto it = ids.find(c);
        int id;
        if (it == ids.end()) {
            id = static_cast<int>(curves.size());
            ids.emplace(c, id);
            PointMask m;
            for (int p = 0; p < n; ++p)
                if (curve_covers(c, points_[p]))
                    m.set(p);
            curves.push_back(c);
            masks.push_back(m);
            // every d-tuple on this curve maps to it
            auto on = m.indices();
            std::vector<int> sub(family_.d);
            auto fill = [&](auto&& self, int depth, int from) -> void {
                if (depth == family_.d) {
                    tuple_curve_[key(sub)] = id;
                    return;
                }
                for (int i = from; i < static_cast<int>(on.size()); ++i) {
                    sub[depth] = on[i];
                    self(self, depth + 1, i + 1);
                }
            };
            fill(fill, 0, 0);
        } else {
            tuple_curve_[kk] = it->second;
        }
    };
    std::vector<int> tuple(family_.d);
    auto walk = [&](auto&& self, int depth, int from) -> void {
        if (depth == family_.d) {
            record(tuple);
            return;
        }
        for (int i = from; i < n; ++i) {
            tuple[depth] = i;
            self(self, depth + 1, i + 1);
        }
    };
    walk(walk, 0, 0);

    auto order = canonical_order(curves);
    std::vector<int> rank(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        rank[order[r]] = static_cast<int>(r);
        curves_.push_back(curves[order[r]]);
        masks_.push_back(masks[order[r]]);
    }
    for (auto& [kk, id] : tuple_curve_)
        if (id >= 0)
            id = rank[id];
}

std::uint32_t CurveTable::key(const std::vector<int>& t) const
{
    std::uint32_t k = 0;
    for (int v : t)
        k = (k << 8) | static_cast<std::uint32_t>(v);
    return k | (static_cast<std::uint32_t>(t.size()) << 24);
}

int CurveTable::curve_of(const std::vector<int>& tuple) const
{
    auto it = tuple_curve_.find(key(tuple));
    return it == tuple_curve_.end() ? -1 : it->second;
}

bool CurveTable::coverable(const std::vector<int>& tuple) const
{
    if (static_cast<int>(tuple.size()) == family_.d)
        return curve_of(tuple) >= 0;
    if (tuple.size() == 2 && family_.kind == FamilyKind::vparabola2)
        return points_[tuple[0]][0] != points_[tuple[1]][0];
    return static_cast<int>(tuple.size()) < family_.d;
}

Curve CurveTable::completion(const std::vector<int>& ids) const
{
    std::vector<Point> sel;
    for (int i : ids)
        sel.push_back(points_[i]);
    auto through = curve_through(family_, sel);
    if (through.empty())
        throw InternalError("completion requested for an uncoverable point set");
    return through.front();
}

// ---------------------------------------------------------------- PlaneTable

PlaneTable::PlaneTable(std::vector<Point> pts) : points_(std::move(pts))
{
    int n = size();
    check_capacity(n);
    require_distinct(points_, 3);

    // lines
    std::vector<int> pair_line(n * n, -1);
    std::vector<Flat> lines;
    std::vector<PointMask> lmasks;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            if (pair_line[p * n + q] >= 0)
                continue;
            Flat l = line_through(points_[p], points_[q]);
            PointMask m;
            for (int x = 0; x < n; ++x)
                if (l.contains(points_[x]))
                    m.set(x);
            int id = static_cast<int>(lines.size());
            lines.push_back(l);
            lmasks.push_back(m);
            auto on = m.indices();
            for (int a : on)
                for (int b : on)
                    if (a != b)
                        pair_line[a * n + b] = id;
        }
    auto lorder = canonical_order(lines);
    std::vector<int> lrank(lines.size());
    for (std::size_t r = 0; r < lorder.size(); ++r) {
        lrank[lorder[r]] = static_cast<int>(r);
        lines_.push_back(lines[lorder[r]]);
        line_masks_.push_back(lmasks[lorder[r]]);
    }
    line_of_pair_.assign(n * n, -1);
    for (int i = 0; i < n * n; ++i)
        if (pair_line[i] >= 0)
            line_of_pair_[i] = lrank[pair_line[i]];

    // planes through a line and an off-line point
    std::map<Plane3, int> ids;
    std::vector<Plane3> planes;
    std::vector<PointMask> pmasks;
    std::unordered_map<std::int64_t, int> lp;
    for (int l = 0; l < line_count(); ++l)
        for (int p = 0; p < n; ++p) {
            if (line_masks_[l].test(p) || lp.count(std::int64_t{l} * n + p))
                continue;
            Plane3 h = plane_through_line_point(lines_[l], points_[p]);
            auto it = ids.find(h);
            int id;
            if (it == ids.end()) {
                id = static_cast<int>(planes.size());
                ids.emplace(h, id);
                PointMask m;
                for (int x = 0; x < n; ++x)
                    if (flat_contains(h, points_[x]))
                        m.set(x);
                planes.push_back(h);
                pmasks.push_back(m);
            } else {
                id = it->second;
            }
            (pmasks[id] - line_masks_[l]).for_each([&](int q) { lp[std::int64_t{l} * n + q] = id; });
        }
    auto porder = canonical_order(planes);
    std::vector<int> prank(planes.size());
    for (std::size_t r = 0; r < porder.size(); ++r) {
        prank[porder[r]] = static_cast<int>(r);
        planes_.push_back(planes[porder[r]]);
        plane_masks_.push_back(pmasks[porder[r]]);
    }
    for (auto& [kk, id] : lp)
        line_point_plane_[kk] = prank[id];

    plane_lines_.assign(planes_.size(), {});
    for (int h = 0; h < plane_count(); ++h)
        for (int l = 0; l < line_count(); ++l)
            if (line_masks_[l].is_subset_of(plane_masks_[h]))
                plane_lines_[h].push_back(l);

    // fallback planes: walk small integer offsets until a plane through the line misses every other point
    for (int l = 0; l < line_count(); ++l) {
        const Flat& line = lines_[l];
        bool placed = false;
        for (int radius = 1; !placed; ++radius)
            for (int a = -radius; a <= radius && !placed; ++a)
                for (int b = -radius; b <= radius && !placed; ++b)
                    for (int c = -radius; c <= radius && !placed; ++c) {
                        if (std::max({std::abs(a), std::abs(b), std::abs(c)}) != radius)
                            continue;
                        const Vec3& base = line.base();
                        Point q{base[0] + a, base[1] + b, base[2] + c};
                        if (line.contains(q))
                            continue;
                        Plane3 h = plane_through_line_point(line, q);
                        bool clean = true;
                        for (int x = 0; x < n && clean; ++x)
                            if (!line_masks_[l].test(x) && flat_contains(h, points_[x]))
                                clean = false;
                        if (clean) {
                            fallback_.push_back(h);
                            placed = true;
                        }
                    }
    }
}

int PlaneTable::plane_of(int line, int p) const
{
    auto it = line_point_plane_.find(std::int64_t{line} * size() + p);
    if (it == line_point_plane_.end())
        throw InternalError("plane_of called with a point on the line");
    return it->second;
}

} // namespace geocover
