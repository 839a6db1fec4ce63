#include "geocover/plane_branch.hpp"

#include "geocover/errors.hpp"
#include "geocover/incl_excl.hpp"
#include "geocover/kernel.hpp"
#include "geocover/tables.hpp"
#include "partition_driver.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace geocover {

Rational plane_gamma(int k, int i)
{
    if (i == 0)
        return Rational(k * k + k);
    Rational g(k * k);
    g /= Rational(BigInt(1) << i);
    return g;
}

int plane_recursion_depth(int k)
{
    int r = recursion_depth(k, 3, k + 1);
    while (r > 1 && (1LL << r) > static_cast<long long>(k) * k)
        --r;
    return r;
}

namespace {

Rational pow5(const Rational& x)
{
    Rational sq = x * x;
    return sq * sq * x;
}

Rational pow4(const Rational& x)
{
    Rational sq = x * x;
    return sq * sq;
}

} // namespace

bool is_too_degenerate(int t, int m, const Rational& gamma)
{
    return pow5(Rational(t - m)) * gamma < pow5(Rational(t));
}

bool is_too_degenerate(const Plane3& h, const std::vector<Point>& pts, int i, int k)
{
    std::vector<Point> on;
    for (const auto& p : pts)
        if (flat_contains(h, p))
            on.push_back(p);
    int t = static_cast<int>(on.size());
    return is_too_degenerate(t, max_collinear(on).count, plane_gamma(k, i));
}

bool is_line_rich(int m, const Rational& gamma)
{
    Rational gap = gamma - m;
    if (sgn(gap) <= 0)
        return true;
    return pow5(gap) <= pow4(gamma);
}

bool is_ripe(int j, int i, int k)
{
    return !(pow5(plane_gamma(k, i)) >= 32 * pow4(plane_gamma(k, j)));
}

std::vector<StampedLine> ripe_lines(const std::vector<StampedLine>& stamped, int i, int k)
{
    std::vector<StampedLine> out;
    for (const auto& e : stamped)
        if (is_ripe(e.depth, i, k))
            out.push_back(e);
    return out;
}

namespace {

Plane3 missing_plane(const Flat& line, const std::vector<Point>& pts)
{
    for (int radius = 1;; ++radius)
        for (int a = -radius; a <= radius; ++a)
            for (int b = -radius; b <= radius; ++b)
                for (int c = -radius; c <= radius; ++c) {
                    if (std::max({std::abs(a), std::abs(b), std::abs(c)}) != radius)
                        continue;
                    const Vec3& base = line.base();
                    Point q{base[0] + a, base[1] + b, base[2] + c};
                    if (line.contains(q))
                        continue;
                    Plane3 h = plane_through_line_point(line, q);
                    bool clean = std::none_of(pts.begin(), pts.end(), [&](const Point& p) {
                        return !line.contains(p) && flat_contains(h, p);
                    });
                    if (clean)
                        return h;
                }
}

} // namespace

std::vector<std::vector<Plane3>> extend_lines(const std::vector<Flat>& lines, const std::vector<Point>& pts)
{
    std::vector<std::vector<Plane3>> options;
    for (const auto& l : lines) {
        if (l.j() != 1)
            throw InvalidInput("extend_lines needs lines");
        std::set<Plane3> opts;
        for (const auto& p : pts)
            if (!l.contains(p))
                opts.insert(plane_through_line_point(l, p));
        if (opts.empty())
            opts.insert(missing_plane(l, pts));
        options.emplace_back(opts.begin(), opts.end());
    }
    std::vector<std::vector<Plane3>> out{{}};
    for (const auto& opts : options) {
        std::vector<std::vector<Plane3>> next;
        for (const auto& partial : out)
            for (const auto& h : opts) {
                auto grown = partial;
                grown.push_back(h);
                next.push_back(std::move(grown));
            }
        out = std::move(next);
    }
    return out;
}

namespace {

struct Element {
    bool is_line = false;
    int id = 0;
};

struct Hull {
    int dim = 0;
    int id = 0;
};

// Affine hulls of point/line elements, resolved through the table's spans.
struct TableFlatOps {
    const PlaneTable* t;
    const std::vector<Element>* els;

    Hull hull(int e) const
    {
        const auto& el = (*els)[e];
        return {el.is_line ? 1 : 0, el.id};
    }

    bool contains(const Hull& h, int e) const
    {
        const auto& el = (*els)[e];
        if (h.dim == 3)
            return true;
        if (!el.is_line) {
            switch (h.dim) {
            case 0: return h.id == el.id;
            case 1: return t->line_mask(h.id).test(el.id);
            default: return t->plane_mask(h.id).test(el.id);
            }
        }
        switch (h.dim) {
        case 0: return false;
        case 1: return h.id == el.id;
        default: return t->line_mask(el.id).is_subset_of(t->plane_mask(h.id));
        }
    }

    Hull extend(const Hull& h, int e) const
    {
        if (contains(h, e))
            return h;
        const auto& el = (*els)[e];
        if (h.dim == 0) {
            if (!el.is_line)
                return {1, t->line_of(h.id, el.id)};
            if (t->line_mask(el.id).test(h.id))
                return {1, el.id};
            return {2, t->plane_of(el.id, h.id)};
        }
        if (h.dim == 1) {
            if (!el.is_line)
                return {2, t->plane_of(h.id, el.id)};
            int off = (t->line_mask(el.id) - t->line_mask(h.id)).first();
            int plane = t->plane_of(h.id, off);
            if (t->line_mask(el.id).is_subset_of(t->plane_mask(plane)))
                return {2, plane};
            return {3, 0};
        }
        return {3, 0};
    }

    int dim(const Hull& h) const { return h.dim; }
};

class PlaneBrancher {
public:
    PlaneBrancher(const PlaneTable& table, int k, int r, const BranchConfig& cfg, Rational factor)
        : t_(table), k_(k), r_(r), cfg_(cfg), factor_(std::move(factor))
    {
        scale_ = 1LL << r_;
        G_.resize(r_ + 1);
        for (int i = 0; i <= r_; ++i) {
            Rational scaled = plane_gamma(k_, i) * static_cast<long>(scale_);
            G_[i] = scaled.get_num().get_si();
        }
        plane_lo_.assign(r_ + 1, 0);
        plane_hi_.assign(r_ + 1, 0);
        line_min_.assign(r_ + 1, 0);
        for (int i = 1; i <= r_; ++i) {
            plane_lo_[i] = ceil_of(plane_gamma(k_, i)).get_si();
            plane_hi_[i] = floor_of(plane_gamma(k_, i - 1)).get_si();
            int m = 0;
            while (!is_line_rich(m, plane_gamma(k_, i)))
                ++m;
            line_min_[i] = m;
        }
        regime_.assign(r_ + 1, std::vector<char>(r_ + 1, 0));
        ripe_.assign(r_ + 1, std::vector<char>(r_ + 1, 0));
        for (int i = 1; i <= r_; ++i)
            for (int j = 1; j <= r_; ++j) {
                regime_[i][j] = pow5(plane_gamma(k_, i - 1)) >= 32 * pow4(plane_gamma(k_, j));
                ripe_[j][i] = is_ripe(j, i, k_);
            }
        int n = t_.size();
        too_deg_.assign(r_ + 1, std::vector<signed char>((n + 1) * (n + 1), -1));
    }

    bool run(const std::vector<int>& parts, SearchStats& stats, std::vector<Plane3>& witness)
    {
        parts_ = parts;
        suffix_.assign(r_ + 2, 0);
        for (int i = r_; i >= 1; --i)
            suffix_[i] = suffix_[i + 1] + parts_[2 * (i - 1)] + parts_[2 * (i - 1) + 1];
        stats_ = &stats;
        if (stats.widest.size() < static_cast<std::size_t>(r_))
            stats.widest.resize(r_, 0);
        path_.clear();
        leaf_cover_.clear();
        if (!node(PointMask::first_n(t_.size()), {}, 1))
            return false;
        for (int code : path_)
            witness.push_back(code >= 0 ? t_.plane(code) : t_.fallback_plane(-code - 1));
        for (const auto& h : leaf_cover_)
            witness.push_back(h);
        return true;
    }

    // any-flat IE on the points of P plus the distinct lines of the stamped entries
    bool leaf(const PointMask& P, const std::vector<int>& line_ids, int budget, SearchStats* stats)
    {
        std::vector<Element> els;
        P.for_each([&](int p) { els.push_back({false, p}); });
        std::vector<int> lines = line_ids;
        std::sort(lines.begin(), lines.end());
        lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
        for (int l : lines)
            els.push_back({true, l});
        int m = static_cast<int>(els.size());
        leaf_cover_.clear();
        if (m <= budget) {
            for (const auto& el : els)
                leaf_cover_.push_back(el.is_line ? t_.fallback_plane(el.id)
                                                 : plane_containing(Flat::point(t_.points()[el.id])));
            return true;
        }
        if (budget == 0)
            return false;
        if (m > cfg_.ie_cap || m > kMaxIeElements)
            throw CapExceeded("inclusion-exclusion leaf of " + std::to_string(m) +
                              " elements exceeds the cap of " + std::to_string(cfg_.ie_cap));
        TableFlatOps ops{&t_, &els};
        CoverIndex index = build_flat_index(m, ops);
        if (stats)
            stats->ie_subsets += std::uint64_t{1} << m;
        if (ie_sum(index, full_mask(m), budget, 1) < 1)
            return false;

        std::set<Plane3> objects;
        for (const auto& e : index.entries()) {
            Hull h;
            bool first = true;
            for (int x = 0; x < m; ++x)
                if ((e.members >> x) & 1) {
                    h = first ? ops.hull(x) : ops.extend(h, x);
                    first = false;
                }
            objects.insert(h.dim == 2   ? t_.plane(h.id)
                           : h.dim == 1 ? t_.fallback_plane(h.id)
                                        : plane_containing(Flat::point(t_.points()[h.id])));
        }
        // coverage is recomputed per plane since different hulls can share one
        std::map<Plane3, ElementMask> found;
        for (const auto& obj : objects) {
            ElementMask cov = 0;
            for (int x = 0; x < m; ++x) {
                bool in = els[x].is_line ? flat_contains(obj, t_.line(els[x].id))
                                         : flat_contains(obj, t_.points()[els[x].id]);
                if (in)
                    cov |= ElementMask{1} << x;
            }
            found.emplace(obj, cov);
        }
        std::vector<std::pair<Plane3, ElementMask>> cands(found.begin(), found.end());
        std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
            return std::popcount(a.second) > std::popcount(b.second);
        });
        std::vector<ElementMask> covers;
        for (const auto& c : cands)
            covers.push_back(c.second);
        auto chosen = extract_cover_ids(index, full_mask(m), covers, budget);
        if (!chosen)
            throw InternalError("extraction disagrees with the signed sum");
        for (int c : *chosen)
            leaf_cover_.push_back(cands[c].first);
        return true;
    }

private:
    struct Entry {
        int line;
        int depth;
        int rich;
    };
    struct Cand {
        int id;
        PointMask cover;
        int rich;
    };

    long long allowance(const Entry& e, int i) const
    {
        long long ghosts = G_[e.depth - 1] - static_cast<long long>(e.rich) * scale_;
        if (regime_[i][e.depth])
            ghosts = std::min(ghosts, G_[i - 1]);
        return ghosts;
    }

    bool too_degenerate(int i, int t, int m)
    {
        int n = t_.size();
        auto& slot = too_deg_[i][t * (n + 1) + m];
        if (slot < 0)
            slot = is_too_degenerate(t, m, plane_gamma(k_, i)) ? 1 : 0;
        return slot == 1;
    }

    bool node(const PointMask& P, const std::vector<Entry>& L, int i)
    {
        auto& st = *stats_;
        ++st.nodes_expanded;
        if (cfg_.node_limit && st.nodes_expanded > *cfg_.node_limit)
            throw CapExceeded("node limit reached");
        st.max_depth = std::max(st.max_depth, i);
        if (cfg_.debug_checks && static_cast<int>(L.size()) > k_)
            throw InternalError("more stamped lines than the budget");
        if (P.none()) {
            // every stamped line gets a plane of its own
            for (const auto& e : L)
                path_.push_back(-e.line - 1);
            leaf_cover_.clear();
            return true;
        }
        int n = P.count();
        int K = suffix_[i];
        long long bound = K * G_[i - 1];
        for (const auto& e : L)
            bound += allowance(e, i);
        if (static_cast<long long>(n) * scale_ > bound) {
            ++st.leaves_rejected;
            return false;
        }
        if (i >= r_ || below_base_threshold(n, K, k_, factor_)) {
            ++st.leaves_ie;
            std::vector<int> ids;
            for (const auto& e : L)
                ids.push_back(e.line);
            return leaf(P, ids, K + static_cast<int>(L.size()), &st);
        }
        std::vector<Entry> ripe, rest;
        for (const auto& e : L)
            (ripe_[e.depth][i] ? ripe : rest).push_back(e);
        if (!ripe.empty())
            return extend(ripe, 0, P, rest, i);
        return branch(P, L, i);
    }

    bool extend(const std::vector<Entry>& A, std::size_t idx, const PointMask& P,
                const std::vector<Entry>& rest, int i)
    {
        if (idx == A.size())
            return node(P, rest, i);
        int l = A[idx].line;
        std::vector<Cand> opts;
        std::set<int> seen;
        (P - t_.line_mask(l)).for_each([&](int p) {
            int h = t_.plane_of(l, p);
            if (seen.insert(h).second)
                opts.push_back({h, t_.plane_mask(h) & P, 0});
        });
        for (auto& o : opts)
            o.rich = o.cover.count();
        std::stable_sort(opts.begin(), opts.end(), [](const Cand& a, const Cand& b) { return a.rich > b.rich; });
        if (opts.empty())
            opts.push_back({-l - 1, PointMask(), 0});
        for (const auto& o : opts) {
            path_.push_back(o.id);
            if (extend(A, idx + 1, P - o.cover, rest, i))
                return true;
            path_.pop_back();
        }
        return false;
    }

    bool branch(const PointMask& P, const std::vector<Entry>& L, int i)
    {
        auto& st = *stats_;
        std::vector<Cand> H;
        for (int h = 0; h < t_.plane_count(); ++h) {
            int t = t_.plane_mask(h).count_and(P);
            if (t < plane_lo_[i] || t > plane_hi_[i])
                continue;
            int m = std::min(t, 1);
            for (int l : t_.lines_in(h))
                m = std::max(m, t_.line_mask(l).count_and(P));
            if (too_degenerate(i, t, m))
                continue;
            H.push_back({h, t_.plane_mask(h) & P, t});
        }
        std::vector<Cand> Lc;
        for (int l = 0; l < t_.line_count(); ++l) {
            int m = t_.line_mask(l).count_and(P);
            if (m < 2 || m < line_min_[i] || m > plane_hi_[i])
                continue;
            Lc.push_back({l, t_.line_mask(l) & P, m});
        }
        auto by_rich = [](const Cand& a, const Cand& b) { return a.rich > b.rich; };
        std::stable_sort(H.begin(), H.end(), by_rich);
        std::stable_sort(Lc.begin(), Lc.end(), by_rich);
        if (cfg_.debug_checks)
            check_windows(P, H, Lc, i);
        st.candidates += H.size() + Lc.size();
        st.widest[i - 1] = std::max<std::uint64_t>(st.widest[i - 1], H.size() + Lc.size());
        int h_need = parts_[2 * (i - 1)];
        int l_need = parts_[2 * (i - 1) + 1];
        std::vector<Entry> next = L;
        return choose_planes(H, 0, h_need, Lc, l_need, P, PointMask(), next, i);
    }

    bool choose_planes(const std::vector<Cand>& H, std::size_t start, int need, const std::vector<Cand>& Lc,
                       int l_need, const PointMask& P, const PointMask& removed, std::vector<Entry>& next, int i)
    {
        if (need == 0)
            return choose_lines(Lc, 0, l_need, P, removed, next, i);
        for (std::size_t j = start; j + need <= H.size(); ++j) {
            path_.push_back(H[j].id);
            if (choose_planes(H, j + 1, need - 1, Lc, l_need, P, removed | H[j].cover, next, i))
                return true;
            path_.pop_back();
        }
        return false;
    }

    // lines are chosen with repetition: two solution planes may share their degenerate line
    bool choose_lines(const std::vector<Cand>& Lc, std::size_t start, int need, const PointMask& P,
                      const PointMask& removed, std::vector<Entry>& next, int i)
    {
        if (need == 0)
            return node(P - removed, next, i + 1);
        for (std::size_t j = start; j < Lc.size(); ++j) {
            next.push_back({Lc[j].id, i, Lc[j].rich});
            bool ok = choose_lines(Lc, j, need - 1, P, removed | Lc[j].cover, next, i);
            next.pop_back();
            if (ok)
                return true;
        }
        return false;
    }

    void check_windows(const PointMask& P, const std::vector<Cand>& H, const std::vector<Cand>& Lc, int i)
    {
        std::vector<Point> pts;
        P.for_each([&](int p) { pts.push_back(t_.points()[p]); });
        Rational lo = plane_gamma(k_, i), hi = plane_gamma(k_, i - 1);
        std::set<Plane3> expect, got;
        if (pts.size() >= 3)
            for (const auto& h : enumerate_plane_candidates(pts)) {
                int t = richness(h, pts);
                if (lo <= t && t <= hi && !is_too_degenerate(h, pts, i, k_))
                    expect.insert(h);
            }
        for (const auto& c : H)
            got.insert(t_.plane(c.id));
        if (expect != got)
            throw InternalError("plane window differs from a fresh enumeration");
        std::set<Flat> lexpect, lgot;
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b) {
                Flat l = line_through(pts[a], pts[b]);
                int m = 0;
                for (const auto& p : pts)
                    m += l.contains(p);
                if (m <= hi && is_line_rich(m, lo))
                    lexpect.insert(l);
            }
        for (const auto& c : Lc)
            lgot.insert(t_.line(c.id));
        if (lexpect != lgot)
            throw InternalError("line window differs from a fresh enumeration");
    }

    const PlaneTable& t_;
    int k_, r_;
    const BranchConfig& cfg_;
    Rational factor_;
    long long scale_ = 1;
    std::vector<long long> G_;
    std::vector<long long> plane_lo_, plane_hi_;
    std::vector<int> line_min_;
    std::vector<std::vector<char>> regime_, ripe_;
    std::vector<std::vector<signed char>> too_deg_;
    std::vector<int> parts_;
    std::vector<int> suffix_;
    SearchStats* stats_ = nullptr;
    std::vector<int> path_;
    std::vector<Plane3> leaf_cover_;

public:
    const std::vector<Plane3>& leaf_cover() const { return leaf_cover_; }
};

Rational plane_factor(const BranchConfig& cfg)
{
    return cfg.base_case_factor ? *cfg.base_case_factor : Rational(1);
}

double elapsed_ms(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

PlaneCoverResult pc_recursive(const std::vector<Point>& pts, int k, const std::vector<int>& partition,
                              const BranchConfig& config)
{
    auto start = std::chrono::steady_clock::now();
    if (partition.empty() || partition.size() % 2 != 0)
        throw InvalidInput("plane budget partitions have an even, nonzero number of parts");
    PlaneTable table(pts);
    PlaneCoverResult res;
    res.depth = static_cast<int>(partition.size()) / 2;
    PlaneBrancher br(table, k, res.depth, config, plane_factor(config));
    res.decision = br.run(partition, res.stats, res.witness);
    res.stats.wall_ms = elapsed_ms(start);
    return res;
}

PlaneCoverResult plane_cover(const std::vector<Point>& pts, int k, const BranchConfig& config)
{
    auto start = std::chrono::steady_clock::now();
    PlaneCoverResult res;
    auto kern = plane_kernel_r3(pts, k, config.kernel_seed);
    if (kern.rejected()) {
        res.stats.wall_ms = elapsed_ms(start);
        return res;
    }
    res.witness = kern.forced;
    int rk = kern.reduced_k;
    int n = static_cast<int>(kern.points.size());
    Rational factor = plane_factor(config);
    if (n == 0) {
        res.decision = true;
    } else {
        PlaneTable table(kern.points);
        if (rk < 2 || below_base_threshold(n, rk, rk, factor)) {
            PlaneBrancher br(table, rk, 1, config, factor);
            res.stats.leaves_ie = 1;
            res.decision = br.leaf(PointMask::first_n(n), {}, rk, &res.stats);
            if (res.decision)
                res.witness.insert(res.witness.end(), br.leaf_cover().begin(), br.leaf_cover().end());
        } else {
            res.depth = plane_recursion_depth(rk);
            auto won = detail::drive_partitions<std::vector<Plane3>>(
                rk, 2 * res.depth, config.threads, res.stats,
                [&](const std::vector<int>& parts, SearchStats& st, std::vector<Plane3>& w) {
                    PlaneBrancher local(table, rk, res.depth, config, factor);
                    return local.run(parts, st, w);
                });
            res.decision = won.has_value();
            if (won)
                res.witness.insert(res.witness.end(), won->begin(), won->end());
        }
    }
    if (!res.decision)
        res.witness.clear();
    res.stats.wall_ms = elapsed_ms(start);
    return res;
}

} // namespace geocover
