#include "geocover/incl_excl.hpp"

#include "geocover/errors.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <thread>

namespace geocover {

IeGround IeGround::curves(std::vector<Point> pts, const FamilySpec& family)
{
    if (family.kind == FamilyKind::plane3)
        throw InvalidInput("curve ground with the plane family");
    require_distinct(pts, 2);
    IeGround g;
    g.mode = IeMode::curves;
    g.family = family;
    g.points = std::move(pts);
    return g;
}

IeGround IeGround::anyflat(std::vector<Flat> elements)
{
    for (const auto& f : elements)
        if (f.j() > 2)
            throw InvalidInput("any-flat ground elements must be points, lines or planes");
    IeGround g;
    g.mode = IeMode::anyflat;
    g.family = family_spec(FamilyKind::plane3);
    g.flats = std::move(elements);
    return g;
}

IeGround IeGround::anyflat_points(const std::vector<Point>& pts)
{
    require_distinct(pts, 3);
    std::vector<Flat> flats;
    for (const auto& p : pts)
        flats.push_back(Flat::point(p));
    return anyflat(std::move(flats));
}

int IeGround::size() const
{
    return static_cast<int>(mode == IeMode::curves ? points.size() : flats.size());
}

IeGround IeGround::permuted(const std::vector<int>& order) const
{
    IeGround g = *this;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (mode == IeMode::curves)
            g.points[i] = points[order[i]];
        else
            g.flats[i] = flats[order[i]];
    }
    return g;
}

// ---------------------------------------------------------------- index

CoverIndex::CoverIndex(int size, std::vector<RepresentativeEntry> entries)
    : size_(size), entries_(std::move(entries))
{
    if (size_ > kMaxIeElements)
        throw CapExceeded("cover index over more than 63 elements");
}

std::uint64_t CoverIndex::count(ElementMask subset) const
{
    std::uint64_t c = 1;
    for (const auto& e : entries_)
        if ((e.members & ~subset) == 0)
            c += std::uint64_t{1} << std::popcount(e.eligible & subset);
    return c;
}

CoverIndex build_curve_index(const CurveIncidence& inc)
{
    int n = inc.size;
    std::vector<RepresentativeEntry> entries;
    std::vector<int> tuple;
    auto rec = [&](auto&& self, int from) -> void {
        for (int e = from; e < n; ++e) {
            tuple.push_back(e);
            if (inc.coverable(tuple)) {
                ElementMask members = 0;
                for (int t : tuple)
                    members |= ElementMask{1} << t;
                if (static_cast<int>(tuple.size()) <= inc.s) {
                    entries.push_back({members, 0});
                    self(self, e + 1);
                } else {
                    ElementMask after = full_mask(n) & ~full_mask(e + 1);
                    entries.push_back({members, inc.on_curve(tuple) & after});
                }
            }
            tuple.pop_back();
        }
    };
    rec(rec, 0);
    return CoverIndex(n, std::move(entries));
}

// ---------------------------------------------------------------- geometric reference

namespace {

std::vector<int> bits_of(ElementMask m)
{
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

std::vector<Point> pick(const std::vector<Point>& pts, const std::vector<int>& ids)
{
    std::vector<Point> out;
    for (int i : ids)
        out.push_back(pts[i]);
    return out;
}

std::vector<Flat> pick(const std::vector<Flat>& flats, const std::vector<int>& ids)
{
    std::vector<Flat> out;
    for (int i : ids)
        out.push_back(flats[i]);
    return out;
}

struct GeometricFlatOps {
    const std::vector<Flat>* flats;
    Flat hull(int e) const { return (*flats)[e]; }
    Flat extend(const Flat& h, int e) const { return affine_hull({h, (*flats)[e]}); }
    int dim(const Flat& h) const { return h.j(); }
    bool contains(const Flat& h, int e) const { return h.contains((*flats)[e]); }
};

} // namespace

bool is_coverable(const IeGround& ground, ElementMask q)
{
    auto ids = bits_of(q);
    if (ids.empty())
        return true;
    if (ground.mode == IeMode::anyflat)
        return affine_hull(pick(ground.flats, ids)).j() <= 2;
    return !curve_through(ground.family, pick(ground.points, ids)).empty();
}

std::vector<int> representative(const IeGround& ground, ElementMask q)
{
    if (!is_coverable(ground, q))
        throw InvalidInput("representative of a set that no single object covers");
    auto ids = bits_of(q);
    if (ground.mode == IeMode::curves) {
        ids.resize(std::min<std::size_t>(ids.size(), ground.family.s + 1));
        return ids;
    }
    std::vector<int> rep;
    std::optional<Flat> hull;
    for (int e : ids) {
        if (hull && hull->contains(ground.flats[e]))
            continue;
        rep.push_back(e);
        hull = hull ? affine_hull({*hull, ground.flats[e]}) : ground.flats[e];
    }
    return rep;
}

BigInt q_count(const IeGround& ground, ElementMask x, const std::vector<int>& rep)
{
    if (rep.empty())
        return 1;
    ElementMask rmask = 0;
    for (std::size_t i = 0; i < rep.size(); ++i) {
        if (i > 0 && rep[i] <= rep[i - 1])
            return 0;
        rmask |= ElementMask{1} << rep[i];
    }
    if ((rmask & ~x) != 0)
        return 0;
    int eligible = 0;
    if (ground.mode == IeMode::curves) {
        int s = ground.family.s;
        if (static_cast<int>(rep.size()) > s + 1)
            return 0;
        auto curves = curve_through(ground.family, pick(ground.points, rep));
        if (curves.empty())
            return 0;
        if (static_cast<int>(rep.size()) <= s)
            return 1;
        for (int p : bits_of(x))
            if (p > rep.back() && curve_covers(curves.front(), ground.points[p]))
                ++eligible;
    } else {
        std::vector<Flat> prefix_hulls;
        for (int r : rep) {
            const Flat& f = ground.flats[r];
            if (!prefix_hulls.empty() && prefix_hulls.back().contains(f))
                return 0;
            prefix_hulls.push_back(prefix_hulls.empty() ? f : affine_hull({prefix_hulls.back(), f}));
        }
        if (prefix_hulls.back().j() > 2)
            return 0;
        for (int p : bits_of(x & ~rmask)) {
            int j = -1;
            while (j + 1 < static_cast<int>(rep.size()) && rep[j + 1] < p)
                ++j;
            if (j >= 0 && prefix_hulls[j].contains(ground.flats[p]))
                ++eligible;
        }
    }
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, eligible);
    return out;
}

BigInt c_count(const IeGround& ground, ElementMask x)
{
    int max_rep = ground.mode == IeMode::curves ? ground.family.s + 1 : 3;
    auto ids = bits_of(x);
    BigInt total = 0;
    std::vector<int> rep;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        total += q_count(ground, x, rep);
        if (static_cast<int>(rep.size()) == max_rep)
            return;
        for (std::size_t i = from; i < ids.size(); ++i) {
            rep.push_back(ids[i]);
            self(self, i + 1);
            rep.pop_back();
        }
    };
    rec(rec, 0);
    return total;
}

CoverIndex build_index(const IeGround& ground)
{
    int n = ground.size();
    if (n > kMaxIeElements)
        throw CapExceeded("ground set larger than 63 elements");
    if (ground.mode == IeMode::anyflat)
        return build_flat_index(n, GeometricFlatOps{&ground.flats});
    CurveIncidence inc;
    inc.size = n;
    inc.s = ground.family.s;
    inc.coverable = [&](const std::vector<int>& t) {
        return !curve_through(ground.family, pick(ground.points, t)).empty();
    };
    inc.on_curve = [&](const std::vector<int>& t) {
        Curve c = curve_through(ground.family, pick(ground.points, t)).front();
        ElementMask m = 0;
        for (int p = 0; p < n; ++p)
            if (curve_covers(c, ground.points[p]))
                m |= ElementMask{1} << p;
        return m;
    };
    return build_curve_index(inc);
}

// ---------------------------------------------------------------- sweeps

namespace {

struct Split {
    ElementMask low = 0;
    std::vector<ElementMask> high_choices;
};

// fixes the highest few elements of the ground so that each job sweeps the rest
Split split_ground(ElementMask ground, int threads)
{
    Split sp;
    auto ids = bits_of(ground);
    int hb = 0;
    while ((1 << hb) < threads && hb < static_cast<int>(ids.size()) && hb < 8)
        ++hb;
    ElementMask high = 0;
    for (int i = 0; i < hb; ++i)
        high |= ElementMask{1} << ids[ids.size() - 1 - i];
    sp.low = ground & ~high;
    ElementMask h = high;
    while (true) {
        sp.high_choices.push_back(h);
        if (h == 0)
            break;
        h = (h - 1) & high;
    }
    return sp;
}

template <class Job>
void run_jobs(std::size_t jobs, int threads, Job&& job)
{
    if (threads <= 1 || jobs <= 1) {
        for (std::size_t j = 0; j < jobs; ++j)
            job(j);
        return;
    }
    std::vector<std::thread> pool;
    int workers = std::min<int>(threads, static_cast<int>(jobs));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t j = w; j < jobs; j += workers)
                job(j);
        });
    for (auto& t : pool)
        t.join();
}

BigInt to_big(__int128 v)
{
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
    BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
    BigInt out = (hi << 64) + lo;
    return neg ? BigInt(-out) : out;
}

BigInt sweep_part(const CoverIndex& index, ElementMask ground, ElementMask low, ElementMask hx, int k)
{
    int m = std::popcount(ground);
    if (m * (k + 1) <= 125) {
        __int128 acc = 0;
        for (ElementMask lx = low;; lx = (lx - 1) & low) {
            ElementMask x = hx | lx;
            __int128 c = index.count(ground & ~x);
            __int128 term = 1;
            for (int i = 0; i < k; ++i)
                term *= c;
            acc += (std::popcount(x) & 1) ? -term : term;
            if (lx == 0)
                break;
        }
        return to_big(acc);
    }
    BigInt acc = 0, term;
    for (ElementMask lx = low;; lx = (lx - 1) & low) {
        ElementMask x = hx | lx;
        std::uint64_t c = index.count(ground & ~x);
        BigInt base;
        mpz_import(base.get_mpz_t(), 1, 1, sizeof c, 0, 0, &c);
        mpz_pow_ui(term.get_mpz_t(), base.get_mpz_t(), k);
        if (std::popcount(x) & 1)
            acc -= term;
        else
            acc += term;
        if (lx == 0)
            break;
    }
    return acc;
}

void check_cap(int n, int cap)
{
    if (n > cap || n > kMaxIeElements)
        throw CapExceeded("inclusion-exclusion ground of " + std::to_string(n) +
                          " elements exceeds the cap of " + std::to_string(std::min(cap, kMaxIeElements)));
}

} // namespace

BigInt ie_sum(const CoverIndex& index, ElementMask ground, int k, int threads)
{
    if (k < 0)
        throw InvalidInput("negative budget");
    Split sp = split_ground(ground, threads);
    std::vector<BigInt> parts(sp.high_choices.size());
    run_jobs(parts.size(), threads,
             [&](std::size_t j) { parts[j] = sweep_part(index, ground, sp.low, sp.high_choices[j], k); });
    BigInt total = 0;
    for (const auto& p : parts)
        total += p;
    return total;
}

IeResult ie_decide(const CoverIndex& index, ElementMask ground, int k, const IeOptions& opts)
{
    int n = std::popcount(ground);
    check_cap(n, opts.cap);
    IeResult r;
    r.ie_sum = ie_sum(index, ground, k, opts.threads);
    r.decision = r.ie_sum >= 1;
    r.subsets = std::uint64_t{1} << n;
    return r;
}

IeResult ie_decide(const IeGround& ground, int k, const IeOptions& opts)
{
    check_cap(ground.size(), opts.cap);
    CoverIndex index = build_index(ground);
    return ie_decide(index, full_mask(ground.size()), k, opts);
}

int ie_min_cover(const CoverIndex& index, ElementMask ground, int threads)
{
    int m = std::popcount(ground);
    if (m == 0)
        return 0;
    Split sp = split_ground(ground, threads);
    std::vector<std::vector<BigInt>> parts(sp.high_choices.size());
    run_jobs(parts.size(), threads, [&](std::size_t j) {
        std::vector<BigInt> acc(m + 1, 0);
        BigInt power;
        ElementMask hx = sp.high_choices[j];
        for (ElementMask lx = sp.low;; lx = (lx - 1) & sp.low) {
            ElementMask x = hx | lx;
            std::uint64_t c = index.count(ground & ~x);
            BigInt base;
            mpz_import(base.get_mpz_t(), 1, 1, sizeof c, 0, 0, &c);
            power = 1;
            bool odd = std::popcount(x) & 1;
            for (int kk = 1; kk <= m; ++kk) {
                power *= base;
                if (odd)
                    acc[kk] -= power;
                else
                    acc[kk] += power;
            }
            if (lx == 0)
                break;
        }
        parts[j] = std::move(acc);
    });
    for (int kk = 1; kk <= m; ++kk) {
        BigInt total = 0;
        for (const auto& p : parts)
            total += p[kk];
        if (total >= 1)
            return kk;
    }
    throw InternalError("no cover of size n found by the signed sums");
}

int ie_min_cover(const IeGround& ground, const IeOptions& opts)
{
    check_cap(ground.size(), opts.cap);
    CoverIndex index = build_index(ground);
    return ie_min_cover(index, full_mask(ground.size()), opts.threads);
}

std::optional<std::vector<int>> extract_cover_ids(const CoverIndex& index, ElementMask ground,
                                                  const std::vector<ElementMask>& candidates,
                                                  int k, int threads)
{
    auto feasible = [&](ElementMask rest, int budget) {
        if (std::popcount(rest) <= budget)
            return true;
        if (budget <= 0)
            return false;
        return ie_sum(index, rest, budget, threads) >= 1;
    };
    if (!feasible(ground, k))
        return std::nullopt;
    std::vector<int> chosen;
    ElementMask remaining = ground;
    int budget = k;
    while (remaining) {
        ElementMask first = remaining & (~remaining + 1);
        bool found = false;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            ElementMask cov = candidates[c] & remaining;
            if (!(cov & first))
                continue;
            if (feasible(remaining & ~cov, budget - 1)) {
                chosen.push_back(static_cast<int>(c));
                remaining &= ~cov;
                --budget;
                found = true;
                break;
            }
        }
        if (!found)
            throw InternalError("witness extraction found no candidate consistent with the signed sum");
    }
    return chosen;
}

// ---------------------------------------------------------------- geometric extraction

namespace {

template <class Object>
struct ObjectCandidates {
    std::vector<Object> objects;
    std::vector<ElementMask> covers;
};

template <class Object>
ObjectCandidates<Object> sort_candidates(std::map<Object, ElementMask>& found)
{
    std::vector<std::pair<Object, ElementMask>> all(found.begin(), found.end());
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return std::popcount(a.second) > std::popcount(b.second);
    });
    ObjectCandidates<Object> out;
    for (auto& [obj, cov] : all) {
        out.objects.push_back(obj);
        out.covers.push_back(cov);
    }
    return out;
}

} // namespace

std::vector<Curve> extract_curve_cover(const IeGround& ground, int k, const IeOptions& opts)
{
    if (ground.mode != IeMode::curves)
        throw InvalidInput("extract_curve_cover on an any-flat ground");
    int n = ground.size();
    check_cap(n, opts.cap);
    CoverIndex index = build_index(ground);
    std::map<Curve, ElementMask> found;
    for (const auto& e : index.entries()) {
        auto ids = bits_of(e.members);
        Curve c = curve_through(ground.family, pick(ground.points, ids)).front();
        if (found.count(c))
            continue;
        ElementMask m = 0;
        for (int p = 0; p < n; ++p)
            if (curve_covers(c, ground.points[p]))
                m |= ElementMask{1} << p;
        found.emplace(c, m);
    }
    auto cands = sort_candidates(found);
    auto ids = extract_cover_ids(index, full_mask(n), cands.covers, k, opts.threads);
    if (!ids)
        throw InvalidInput("extract_cover called on a no-instance");
    std::vector<Curve> out;
    for (int i : *ids)
        out.push_back(cands.objects[i]);
    return out;
}

std::vector<Plane3> extract_plane_cover(const IeGround& ground, int k, const IeOptions& opts)
{
    if (ground.mode != IeMode::anyflat)
        throw InvalidInput("extract_plane_cover on a curve ground");
    int n = ground.size();
    check_cap(n, opts.cap);
    CoverIndex index = build_index(ground);
    std::map<Plane3, ElementMask> found;
    for (const auto& e : index.entries()) {
        Plane3 h = plane_containing(affine_hull(pick(ground.flats, bits_of(e.members))));
        if (found.count(h))
            continue;
        ElementMask m = 0;
        for (int p = 0; p < n; ++p)
            if (flat_contains(h, ground.flats[p]))
                m |= ElementMask{1} << p;
        found.emplace(h, m);
    }
    auto cands = sort_candidates(found);
    auto ids = extract_cover_ids(index, full_mask(n), cands.covers, k, opts.threads);
    if (!ids)
        throw InvalidInput("extract_cover called on a no-instance");
    std::vector<Plane3> out;
    for (int i : *ids)
        out.push_back(cands.objects[i]);
    return out;
}

} // namespace geocover
