#include "geocover/curve_branch.hpp"

#include "geocover/errors.hpp"
#include "geocover/incl_excl.hpp"
#include "geocover/tables.hpp"
#include "partition_driver.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace geocover {

void SearchStats::merge(const SearchStats& o)
{
    nodes_expanded += o.nodes_expanded;
    leaves_ie += o.leaves_ie;
    leaves_rejected += o.leaves_rejected;
    ie_subsets += o.ie_subsets;
    candidates += o.candidates;
    partitions += o.partitions;
    max_depth = std::max(max_depth, o.max_depth);
    if (widest.size() < o.widest.size())
        widest.resize(o.widest.size(), 0);
    for (std::size_t i = 0; i < o.widest.size(); ++i)
        widest[i] = std::max(widest[i], o.widest[i]);
}

int recursion_depth(int k, int d, int s)
{
    if (k < 2)
        throw InvalidInput("recursion_depth needs k >= 2");
    // smallest r >= 1 with 2^r (d-1) log2 k >= 4sk, i.e. k^(2^r (d-1)) >= 2^(4sk)
    BigInt target;
    mpz_ui_pow_ui(target.get_mpz_t(), 2, 4UL * s * k);
    for (int r = 1;; ++r) {
        BigInt lhs;
        mpz_ui_pow_ui(lhs.get_mpz_t(), k, (1UL << r) * (d - 1));
        if (lhs >= target)
            return r;
    }
}

std::vector<int> first_partition(int k, int r)
{
    if (r < 1 || k < 0)
        throw InvalidInput("budget partitions need r >= 1 and k >= 0");
    std::vector<int> parts(r, 0);
    parts.back() = k;
    return parts;
}

bool next_partition(std::vector<int>& parts)
{
    int r = static_cast<int>(parts.size());
    int last = r - 1;
    while (last >= 0 && parts[last] == 0)
        --last;
    int j = parts[r - 1] > 0 ? r - 2 : last - 1;
    if (j < 0)
        return false;
    int tail = 0;
    for (int i = j + 1; i < r; ++i) {
        tail += parts[i];
        parts[i] = 0;
    }
    ++parts[j];
    parts[r - 1] = tail - 1;
    return true;
}

std::vector<std::vector<int>> budget_partitions(int k, int r)
{
    std::vector<std::vector<int>> out;
    auto p = first_partition(k, r);
    do
        out.push_back(p);
    while (next_partition(p));
    return out;
}

bool below_base_threshold(int points, int budget, int k, const Rational& factor)
{
    if (sgn(factor) <= 0 || budget <= 0 || k < 2)
        return false;
    // points < (a/b) K log2 k  <=>  2^(b points) < k^(a K)
    unsigned long a = factor.get_num().get_ui();
    unsigned long b = factor.get_den().get_ui();
    BigInt lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), 2, b * points);
    mpz_ui_pow_ui(rhs.get_mpz_t(), k, a * budget);
    return lhs < rhs;
}

std::vector<Curve> rich_poor_candidates(const std::vector<Point>& pts, const FamilySpec& family,
                                        const Rational& lo, const Rational& hi)
{
    std::vector<Curve> out;
    if (static_cast<int>(pts.size()) < family.d)
        return out;
    for (const auto& c : enumerate_candidates(pts, family)) {
        int m = richness(c, pts);
        if (lo <= m && m <= hi)
            out.push_back(c);
    }
    return out;
}

namespace {

struct LeafOutcome {
    bool yes = false;
    std::vector<Curve> cover;
};

class CurveBrancher {
public:
    CurveBrancher(const CurveTable& table, int k, const BranchConfig& cfg, Rational factor)
        : t_(table), k_(k), cfg_(cfg), factor_(std::move(factor)), s_(table.family().s),
          d_(table.family().d)
    {
    }

    bool run(const std::vector<int>& parts, SearchStats& stats, std::vector<Curve>& witness)
    {
        parts_ = parts;
        r_ = static_cast<int>(parts.size());
        suffix_.assign(r_ + 2, 0);
        for (int i = r_; i >= 1; --i)
            suffix_[i] = suffix_[i + 1] + parts_[i - 1];
        stats_ = &stats;
        if (stats.widest.size() < static_cast<std::size_t>(r_))
            stats.widest.resize(r_, 0);
        path_.clear();
        leaf_cover_.clear();
        if (!node(PointMask::first_n(t_.size()), 1))
            return false;
        for (const auto& ch : path_)
            witness.push_back(ch.curve >= 0 ? t_.curve(ch.curve) : t_.completion(ch.subset.indices()));
        for (const auto& c : leaf_cover_)
            witness.push_back(c);
        return true;
    }

    LeafOutcome leaf(const PointMask& P, int budget, SearchStats* stats)
    {
        LeafOutcome out;
        auto ids = P.indices();
        int m = static_cast<int>(ids.size());
        if (m <= budget) {
            out.yes = true;
            for (int p : ids)
                out.cover.push_back(t_.completion({p}));
            return out;
        }
        if (budget == 0)
            return out;
        if (m > cfg_.ie_cap || m > kMaxIeElements)
            throw CapExceeded("inclusion-exclusion leaf of " + std::to_string(m) +
                              " points exceeds the cap of " + std::to_string(cfg_.ie_cap));
        auto global = [&](const std::vector<int>& local) {
            std::vector<int> g;
            for (int i : local)
                g.push_back(ids[i]);
            return g;
        };
        auto localize = [&](const PointMask& mask) {
            ElementMask out_mask = 0;
            for (int i = 0; i < m; ++i)
                if (mask.test(ids[i]))
                    out_mask |= ElementMask{1} << i;
            return out_mask;
        };
        CurveIncidence inc;
        inc.size = m;
        inc.s = s_;
        inc.coverable = [&](const std::vector<int>& tuple) { return t_.coverable(global(tuple)); };
        inc.on_curve = [&](const std::vector<int>& tuple) {
            return localize(t_.mask(t_.curve_of(global(tuple))));
        };
        CoverIndex index = build_curve_index(inc);
        if (stats)
            stats->ie_subsets += std::uint64_t{1} << m;
        if (ie_sum(index, full_mask(m), budget, 1) < 1)
            return out;

        std::map<Curve, ElementMask> found;
        for (const auto& e : index.entries()) {
            std::vector<int> local;
            for (int i = 0; i < m; ++i)
                if ((e.members >> i) & 1)
                    local.push_back(i);
            auto g = global(local);
            if (static_cast<int>(g.size()) == d_) {
                int id = t_.curve_of(g);
                found.emplace(t_.curve(id), localize(t_.mask(id)));
            } else {
                Curve c = t_.completion(g);
                if (found.count(c))
                    continue;
                ElementMask cov = 0;
                for (int i = 0; i < m; ++i)
                    if (curve_covers(c, t_.points()[ids[i]]))
                        cov |= ElementMask{1} << i;
                found.emplace(c, cov);
            }
        }
        std::vector<std::pair<Curve, ElementMask>> cands(found.begin(), found.end());
        std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
            return std::popcount(a.second) > std::popcount(b.second);
        });
        std::vector<ElementMask> covers;
        for (const auto& c : cands)
            covers.push_back(c.second);
        auto chosen = extract_cover_ids(index, full_mask(m), covers, budget);
        if (!chosen)
            throw InternalError("extraction disagrees with the signed sum");
        out.yes = true;
        for (int c : *chosen)
            out.cover.push_back(cands[c].first);
        return out;
    }

private:
    struct Choice {
        int curve = -1;
        PointMask subset;
    };
    struct Cand {
        int curve = -1;
        PointMask cover;
        int rich = 0;
    };

    bool node(const PointMask& P, int i)
    {
        auto& st = *stats_;
        ++st.nodes_expanded;
        if (cfg_.node_limit && st.nodes_expanded > *cfg_.node_limit)
            throw CapExceeded("node limit reached");
        st.max_depth = std::max(st.max_depth, i);
        if (P.none())
            return true;
        int n = P.count();
        int K = suffix_[i];
        long long sk = static_cast<long long>(s_) * k_;
        // |P| > K_i * sk / 2^(i-1)
        if ((static_cast<long long>(n) << (i - 1)) > K * sk) {
            ++st.leaves_rejected;
            return false;
        }
        if (i >= r_ || below_base_threshold(n, K, k_, factor_)) {
            ++st.leaves_ie;
            auto out = leaf(P, K, &st);
            if (out.yes)
                leaf_cover_ = std::move(out.cover);
            return out.yes;
        }
        auto S = window(P, i);
        st.candidates += S.size();
        st.widest[i - 1] = std::max<std::uint64_t>(st.widest[i - 1], S.size());
        return choose(S, 0, parts_[i - 1], P, PointMask(), i);
    }

    bool choose(const std::vector<Cand>& S, std::size_t start, int need, const PointMask& P,
                const PointMask& removed, int i)
    {
        if (need == 0)
            return node(P - removed, i + 1);
        for (std::size_t j = start; j + need <= S.size(); ++j) {
            path_.push_back({S[j].curve, S[j].curve >= 0 ? PointMask() : S[j].cover});
            if (choose(S, j + 1, need - 1, P, removed | S[j].cover, i))
                return true;
            path_.pop_back();
        }
        return false;
    }

    std::vector<Cand> window(const PointMask& P, int i)
    {
        long long sk = static_cast<long long>(s_) * k_;
        long long lo = (sk + (1LL << i) - 1) >> i;  // ceil(gamma_i)
        long long hi = sk >> (i - 1);              // floor(gamma_{i-1})
        std::vector<Cand> S;
        for (int c = 0; c < t_.curve_count(); ++c) {
            int rich = t_.mask(c).count_and(P);
            if (rich >= d_ && rich >= lo && rich <= hi)
                S.push_back({c, t_.mask(c) & P, rich});
        }
        std::stable_sort(S.begin(), S.end(), [](const Cand& a, const Cand& b) { return a.rich > b.rich; });
        if (cfg_.debug_checks)
            check_window(P, S, lo, hi);
        // point sets below d points that one curve can hold on its own
        auto ids = P.indices();
        for (int size = std::min<long long>(d_ - 1, hi); size >= std::max(1LL, lo); --size) {
            if (size == 1) {
                for (int p : ids) {
                    PointMask m;
                    m.set(p);
                    S.push_back({-1, m, 1});
                }
            } else {
                for (std::size_t a = 0; a < ids.size(); ++a)
                    for (std::size_t b = a + 1; b < ids.size(); ++b)
                        if (t_.coverable({ids[a], ids[b]})) {
                            PointMask m;
                            m.set(ids[a]);
                            m.set(ids[b]);
                            S.push_back({-1, m, 2});
                        }
            }
        }
        return S;
    }

    void check_window(const PointMask& P, const std::vector<Cand>& S, long long lo, long long hi)
    {
        std::vector<Point> pts;
        P.for_each([&](int p) { pts.push_back(t_.points()[p]); });
        auto fresh = rich_poor_candidates(pts, t_.family(), Rational(static_cast<long>(lo)), Rational(static_cast<long>(hi)));
        std::set<Curve> expect(fresh.begin(), fresh.end());
        std::set<Curve> got;
        for (const auto& c : S)
            got.insert(t_.curve(c.curve));
        if (expect != got)
            throw InternalError("candidate window differs from a fresh enumeration");
    }

    const CurveTable& t_;
    int k_;
    const BranchConfig& cfg_;
    Rational factor_;
    int s_, d_;
    int r_ = 1;
    std::vector<int> parts_;
    std::vector<int> suffix_;
    SearchStats* stats_ = nullptr;
    std::vector<Choice> path_;
    std::vector<Curve> leaf_cover_;
};

Rational default_factor(const FamilySpec& family, const BranchConfig& cfg)
{
    if (cfg.base_case_factor)
        return *cfg.base_case_factor;
    return Rational(family.d - 1, 2);
}

double elapsed_ms(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

CurveCoverResult cc_recursive(const std::vector<Point>& pts, const FamilySpec& family, int k,
                              const std::vector<int>& partition, const BranchConfig& config)
{
    auto start = std::chrono::steady_clock::now();
    CurveTable table(pts, family);
    CurveCoverResult res;
    res.depth = static_cast<int>(partition.size());
    CurveBrancher br(table, k, config, default_factor(family, config));
    res.decision = br.run(partition, res.stats, res.witness);
    res.stats.wall_ms = elapsed_ms(start);
    return res;
}

CurveCoverResult curve_cover(const std::vector<Point>& pts, const FamilySpec& family, int k,
                             const BranchConfig& config)
{
    auto start = std::chrono::steady_clock::now();
    CurveCoverResult res;
    auto kern = curve_kernel(pts, family, k);
    if (kern.rejected()) {
        res.stats.wall_ms = elapsed_ms(start);
        return res;
    }
    res.witness = kern.forced;
    int rk = kern.reduced_k;
    int n = static_cast<int>(kern.points.size());
    CurveTable table(kern.points, family);
    Rational factor = default_factor(family, config);
    CurveBrancher br(table, rk, config, factor);
    if (n == 0) {
        res.decision = true;
    } else if (rk < 2 || below_base_threshold(n, rk, rk, factor)) {
        res.stats.leaves_ie = 1;
        auto out = br.leaf(PointMask::first_n(n), rk, &res.stats);
        res.decision = out.yes;
        for (auto& c : out.cover)
            res.witness.push_back(c);
    } else {
        res.depth = recursion_depth(rk, family.d, family.s);
        auto won = detail::drive_partitions<std::vector<Curve>>(
            rk, res.depth, config.threads, res.stats,
            [&](const std::vector<int>& parts, SearchStats& st, std::vector<Curve>& w) {
                CurveBrancher local(table, rk, config, factor);
                return local.run(parts, st, w);
            });
        res.decision = won.has_value();
        if (won)
            res.witness.insert(res.witness.end(), won->begin(), won->end());
    }
    if (!res.decision)
        res.witness.clear();
    res.stats.wall_ms = elapsed_ms(start);
    return res;
}

} // namespace geocover
