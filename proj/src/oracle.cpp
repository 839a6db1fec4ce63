#include "geocover/oracle.hpp"

#include "geocover/errors.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace geocover {

bool object_covers(const CoverObject& obj, const Point& p)
{
    if (const auto* c = std::get_if<Curve>(&obj))
        return p.dim() == 2 && curve_covers(*c, p);
    const auto& h = std::get<Plane3>(obj);
    return p.dim() == 3 && flat_contains(h, p);
}

std::string object_to_string(const CoverObject& obj)
{
    return std::visit([](const auto& o) { return o.to_string(); }, obj);
}

namespace {

ElementMask covered_by(const CoverObject& obj, const std::vector<Point>& pts)
{
    ElementMask m = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (object_covers(obj, pts[i]))
            m |= ElementMask{1} << i;
    return m;
}

void add_candidate(std::map<ElementMask, CoverObject>& sets, ElementMask m, CoverObject obj)
{
    sets.emplace(m, std::move(obj));
}

} // namespace

std::vector<CandidateSet> oracle_candidates(const std::vector<Point>& pts, const FamilySpec& family)
{
    int n = static_cast<int>(pts.size());
    if (n > kMaxIeElements)
        throw CapExceeded("oracle limited to 63 points");
    std::map<ElementMask, CoverObject> sets;
    if (family.kind == FamilyKind::plane3) {
        require_distinct(pts, 3);
        for (const auto& h : enumerate_plane_candidates(pts))
            add_candidate(sets, covered_by(h, pts), h);
        // points on a common line that no enumerated plane needs to hold together
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Flat line = line_through(pts[i], pts[j]);
                ElementMask m = 0;
                for (int p = 0; p < n; ++p)
                    if (line.contains(pts[p]))
                        m |= ElementMask{1} << p;
                add_candidate(sets, m, plane_containing(line));
            }
        for (int i = 0; i < n; ++i)
            add_candidate(sets, ElementMask{1} << i, plane_containing(Flat::point(pts[i])));
    } else {
        require_distinct(pts, 2);
        if (n >= family.d)
            for (const auto& c : enumerate_candidates(pts, family))
                add_candidate(sets, covered_by(c, pts), c);
        for (int i = 0; i < n; ++i) {
            add_candidate(sets, ElementMask{1} << i, curve_through(family, {pts[i]}).front());
            if (family.d < 3)
                continue;
            for (int j = i + 1; j < n; ++j) {
                auto through = curve_through(family, {pts[i], pts[j]});
                if (!through.empty())
                    add_candidate(sets, (ElementMask{1} << i) | (ElementMask{1} << j), through.front());
            }
        }
    }
    std::vector<CandidateSet> all;
    for (auto& [m, obj] : sets)
        all.push_back({obj, m});
    std::vector<CandidateSet> kept;
    for (const auto& a : all) {
        bool dominated = std::any_of(all.begin(), all.end(), [&](const CandidateSet& b) {
            return b.covered != a.covered && (a.covered & ~b.covered) == 0;
        });
        if (!dominated)
            kept.push_back(a);
    }
    std::stable_sort(kept.begin(), kept.end(), [](const CandidateSet& a, const CandidateSet& b) {
        return std::popcount(a.covered) > std::popcount(b.covered);
    });
    return kept;
}

namespace {

struct Search {
    const std::vector<CandidateSet>* cands;
    std::vector<std::vector<int>> containing;
    int max_cover = 1;
    int best = 0;
    std::vector<int> best_choice;
    std::vector<int> choice;
    bool stop_at_first = false;
    bool done = false;

    void run(ElementMask uncovered)
    {
        if (done)
            return;
        int depth = static_cast<int>(choice.size());
        if (uncovered == 0) {
            best = depth;
            best_choice = choice;
            if (stop_at_first)
                done = true;
            return;
        }
        int left = std::popcount(uncovered);
        int bound = (left + max_cover - 1) / max_cover;
        if (depth + bound >= best)
            return;
        int p = std::countr_zero(uncovered);
        for (int c : containing[p]) {
            choice.push_back(c);
            run(uncovered & ~(*cands)[c].covered);
            choice.pop_back();
            if (done)
                return;
        }
    }
};

Search make_search(const std::vector<CandidateSet>& cands, int n)
{
    Search s;
    s.cands = &cands;
    s.containing.assign(n, {});
    for (std::size_t c = 0; c < cands.size(); ++c) {
        s.max_cover = std::max(s.max_cover, std::popcount(cands[c].covered));
        for (int p = 0; p < n; ++p)
            if ((cands[c].covered >> p) & 1)
                s.containing[p].push_back(static_cast<int>(c));
    }
    return s;
}

void check_oracle_cap(int n, const OracleOptions& opts)
{
    if (n > opts.cap)
        throw CapExceeded("oracle over " + std::to_string(n) + " points exceeds the cap of " +
                          std::to_string(opts.cap));
}

} // namespace

OracleResult oracle_min_cover(const std::vector<Point>& pts, const FamilySpec& family,
                              const OracleOptions& opts)
{
    int n = static_cast<int>(pts.size());
    check_oracle_cap(n, opts);
    auto cands = oracle_candidates(pts, family);
    Search s = make_search(cands, n);
    s.best = n + 1;
    s.run(full_mask(n));
    OracleResult r;
    r.opt = s.best;
    for (int c : s.best_choice)
        r.witness.push_back(cands[c].object);
    return r;
}

std::optional<std::vector<CoverObject>> oracle_cover_within(const std::vector<Point>& pts,
                                                            const FamilySpec& family, int k,
                                                            const OracleOptions& opts)
{
    int n = static_cast<int>(pts.size());
    check_oracle_cap(n, opts);
    if (k < 0)
        return std::nullopt;
    auto cands = oracle_candidates(pts, family);
    Search s = make_search(cands, n);
    s.best = k + 1;
    s.stop_at_first = true;
    s.run(full_mask(n));
    if (s.best > k)
        return std::nullopt;
    std::vector<CoverObject> out;
    for (int c : s.best_choice)
        out.push_back(cands[c].object);
    return out;
}

bool oracle_decide(const std::vector<Point>& pts, const FamilySpec& family, int k,
                   const OracleOptions& opts)
{
    return oracle_cover_within(pts, family, k, opts).has_value();
}

int count_rich(const std::vector<Point>& pts, const FamilySpec& family, int gamma)
{
    int count = 0;
    if (family.kind == FamilyKind::plane3) {
        for (const auto& h : enumerate_plane_candidates(pts))
            count += richness(h, pts) >= gamma;
    } else if (static_cast<int>(pts.size()) >= family.d) {
        for (const auto& c : enumerate_candidates(pts, family))
            count += richness(c, pts) >= gamma;
    }
    return count;
}

bool check_cover(const std::vector<Point>& pts, const FamilySpec& family,
                 const std::vector<CoverObject>& cover, int k)
{
    if (static_cast<int>(cover.size()) > k)
        return false;
    for (const auto& obj : cover) {
        if (family.kind == FamilyKind::plane3) {
            if (!std::holds_alternative<Plane3>(obj))
                return false;
        } else if (!std::holds_alternative<Curve>(obj) || std::get<Curve>(obj).kind() != family.kind) {
            return false;
        }
    }
    for (const auto& p : pts) {
        bool hit = std::any_of(cover.begin(), cover.end(),
                               [&](const CoverObject& o) { return object_covers(o, p); });
        if (!hit)
            return false;
    }
    return true;
}

} // namespace geocover
