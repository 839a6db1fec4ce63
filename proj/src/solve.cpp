#include "geocover/solve.hpp"

#include "geocover/curve_branch.hpp"
#include "geocover/errors.hpp"
#include "geocover/incl_excl.hpp"
#include "geocover/kernel.hpp"
#include "geocover/plane_branch.hpp"

#include <chrono>

namespace geocover {

using nlohmann::json;

std::string resolve_algorithm(const std::string& requested, int n)
{
    if (requested == "auto")
        return n <= 12 ? "oracle" : (n <= 26 ? "ie" : "branch");
    if (requested != "ie" && requested != "branch" && requested != "oracle")
        throw InvalidInput("unknown algorithm '" + requested + "'");
    return requested;
}

namespace {

template <class Object>
std::vector<CoverObject> as_objects(const std::vector<Object>& objs)
{
    return {objs.begin(), objs.end()};
}

BranchConfig branch_config(const SolveOptions& opts)
{
    BranchConfig cfg;
    cfg.base_case_factor = opts.base_case_factor;
    cfg.threads = opts.threads;
    cfg.ie_cap = opts.ie_cap;
    cfg.kernel_seed = opts.kernel_seed;
    return cfg;
}

void add_stats(SolveStats& out, const SearchStats& s)
{
    out.nodes += s.nodes_expanded;
    out.leaves += s.leaves_ie + s.leaves_rejected;
    out.ie_subsets += s.ie_subsets;
    out.candidates += s.candidates;
}

struct Decision {
    bool yes = false;
    std::vector<CoverObject> cover;
};

Decision run_branch(const Instance& inst, int k, const SolveOptions& opts, SolveStats& stats)
{
    auto cfg = branch_config(opts);
    if (inst.family == FamilyKind::plane3) {
        auto r = plane_cover(inst.points, k, cfg);
        add_stats(stats, r.stats);
        return {r.decision, as_objects(r.witness)};
    }
    auto r = curve_cover(inst.points, family_spec(inst.family), k, cfg);
    add_stats(stats, r.stats);
    return {r.decision, as_objects(r.witness)};
}

IeGround ie_ground(const Instance& inst)
{
    if (inst.family == FamilyKind::plane3)
        return IeGround::anyflat_points(inst.points);
    return IeGround::curves(inst.points, family_spec(inst.family));
}

} // namespace

SolveResult solve(const Instance& inst, const SolveOptions& opts)
{
    auto start = std::chrono::steady_clock::now();
    require_distinct(inst.points, inst.dimension());
    if (opts.threads < 1)
        throw InvalidInput("threads must be positive");
    SolveResult res;
    res.k = opts.k.value_or(inst.k);
    if (res.k < 0)
        throw InvalidInput("k must be nonnegative");
    int n = static_cast<int>(inst.points.size());
    res.algorithm = resolve_algorithm(opts.algorithm, n);
    FamilySpec family = family_spec(inst.family, std::max(res.k, 1));
    OracleOptions oopts{opts.oracle_cap};
    IeOptions iopts{opts.ie_cap, opts.threads};
    std::vector<CoverObject> cover;

    if (res.algorithm == "oracle") {
        if (opts.min) {
            auto o = oracle_min_cover(inst.points, family, oopts);
            res.opt = o.opt;
            res.decision = o.opt <= res.k;
            if (res.decision)
                cover = o.witness;
        } else {
            auto w = oracle_cover_within(inst.points, family, res.k, oopts);
            res.decision = w.has_value();
            if (w)
                cover = *w;
        }
    } else if (res.algorithm == "ie") {
        auto ground = ie_ground(inst);
        auto d = ie_decide(ground, res.k, iopts);
        res.decision = d.decision;
        res.stats.ie_subsets += d.subsets;
        if (opts.min) {
            res.opt = ie_min_cover(ground, iopts);
            res.stats.ie_subsets += std::uint64_t{1} << n;
        }
        if (res.decision && opts.witness) {
            if (inst.family == FamilyKind::plane3)
                cover = as_objects(extract_plane_cover(ground, res.k, iopts));
            else
                cover = as_objects(extract_curve_cover(ground, res.k, iopts));
        }
    } else {
        auto d = run_branch(inst, res.k, opts, res.stats);
        res.decision = d.yes;
        cover = std::move(d.cover);
        if (opts.min) {
            // smallest budget the branching solver accepts
            int opt = 0;
            while (!run_branch(inst, opt, opts, res.stats).yes)
                ++opt;
            res.opt = opt;
        }
    }

    if (opts.min && res.opt && (*res.opt <= res.k) != res.decision)
        throw VerificationMismatch("minimum cover size disagrees with the decision");
    if (opts.witness && res.decision) {
        if (!check_cover(inst.points, family, cover, res.k))
            throw VerificationMismatch("witness fails the independent checker");
        res.witness = std::move(cover);
    }
    if (opts.verify && n <= opts.oracle_cap) {
        bool expected = oracle_decide(inst.points, family, res.k, oopts);
        bool agrees = expected == res.decision;
        if (agrees && res.opt)
            agrees = oracle_min_cover(inst.points, family, oopts).opt == *res.opt;
        res.oracle_agrees = agrees;
        if (!agrees)
            throw VerificationMismatch("solver " + res.algorithm + " disagrees with the oracle");
    }
    res.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

json object_json(const CoverObject& obj)
{
    json coefs = json::array();
    std::string kind;
    if (const auto* c = std::get_if<Curve>(&obj)) {
        kind = family_name(c->kind());
        for (const auto& v : c->coefficients())
            coefs.push_back(format_rational(v));
    } else {
        kind = "plane3";
        for (const auto& v : std::get<Plane3>(obj).coefficients())
            coefs.push_back(format_rational(v));
    }
    return {{"kind", kind}, {"coefficients", coefs}};
}

json result_record(const Instance& inst, const SolveOptions& opts, const SolveResult& res)
{
    json rec;
    rec["algorithm"] = res.algorithm;
    rec["decision"] = res.decision ? "yes" : "no";
    rec["k"] = res.k;
    rec["n"] = inst.points.size();
    rec["family"] = std::string(family_name(inst.family));
    rec["seed"] = inst.metadata.contains("seed") ? inst.metadata["seed"] : json(nullptr);
    if (res.opt)
        rec["opt"] = *res.opt;
    if (res.witness) {
        json w = json::array();
        for (const auto& o : *res.witness)
            w.push_back(object_json(o));
        rec["witness"] = w;
    }
    if (res.oracle_agrees)
        rec["oracle_agrees"] = *res.oracle_agrees;
    json stats = {{"nodes", res.stats.nodes},
                  {"leaves", res.stats.leaves},
                  {"ie_subsets", res.stats.ie_subsets},
                  {"candidates", res.stats.candidates}};
    if (opts.timing)
        stats["wall_ms"] = res.stats.wall_ms;
    rec["stats"] = stats;
    rec["config"] = {{"requested_algorithm", opts.algorithm},
                     {"min", opts.min},
                     {"witness", opts.witness},
                     {"verify", opts.verify},
                     {"threads", opts.threads},
                     {"base_case_factor",
                      opts.base_case_factor ? json(format_rational(*opts.base_case_factor)) : json(nullptr)},
                     {"ie_cap", opts.ie_cap},
                     {"oracle_cap", opts.oracle_cap}};
    return rec;
}

Instance kernelize_instance(const Instance& inst, int k, std::uint64_t seed)
{
    require_distinct(inst.points, inst.dimension());
    if (k < 0)
        throw InvalidInput("k must be nonnegative");
    Instance out = inst;
    json forced = json::array();
    bool rejected = false;
    if (inst.family == FamilyKind::plane3) {
        auto kr = plane_kernel_r3(inst.points, k, seed);
        rejected = kr.rejected();
        if (!rejected) {
            out.points = kr.points;
            out.k = kr.reduced_k;
            for (const auto& h : kr.forced)
                forced.push_back(object_json(h));
        }
    } else {
        auto kr = curve_kernel(inst.points, family_spec(inst.family), k);
        rejected = kr.rejected();
        if (!rejected) {
            out.points = kr.points;
            out.k = kr.reduced_k;
            for (const auto& c : kr.forced)
                forced.push_back(object_json(c));
        }
    }
    if (rejected)
        out.k = k;
    out.metadata["kernel"] = {{"input_k", k}, {"verdict", rejected ? "rejected" : "reduced"}, {"forced", forced}};
    return out;
}

} // namespace geocover
