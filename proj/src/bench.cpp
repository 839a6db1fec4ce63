#include "geocover/bench.hpp"

#include "geocover/errors.hpp"
#include "geocover/geometry.hpp"
#include "geocover/solve.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>

namespace geocover {

using nlohmann::json;

namespace {

struct Job {
    Instance inst;
    std::string model;
    int size = 0;
    int k = 0;
    std::string algorithm;
    std::uint64_t seed = 0;
    std::uint64_t root_candidates = 0;
    std::optional<Rational> base_case_factor;
};

template <class T>
T get_or(const json& j, const char* key, T fallback)
{
    auto it = j.find(key);
    return it == j.end() ? fallback : it->get<T>();
}

std::uint64_t root_candidates(const Instance& inst)
{
    if (inst.family == FamilyKind::plane3)
        return enumerate_plane_candidates(inst.points).size();
    return enumerate_candidates(inst.points, family_spec(inst.family)).size();
}

std::vector<Job> expand(const json& suite)
{
    std::vector<Job> jobs;
    const json entries = suite.is_object() ? get_or<json>(suite, "entries", json::array()) : suite;
    if (!entries.is_array())
        throw InvalidInput("suite entries must be an array");
    for (const auto& e : entries) {
        GenParams g;
        g.model = get_or<std::string>(e, "model", "grid");
        g.family = parse_family(get_or<std::string>(e, "family", "line2"));
        g.n = get_or<int>(e, "n", 3);
        g.k = get_or<int>(e, "k", 1);
        g.m = get_or<int>(e, "m", 0);
        g.noise = get_or<int>(e, "noise", 0);
        g.ghosts = get_or<int>(e, "ghosts", 1);
        g.range = get_or<int>(e, "range", 10);
        auto sizes = get_or<std::vector<int>>(e, "sizes", {g.model == "grid" ? 3 : (g.model == "uniform-random" ? g.n : g.m)});
        auto algorithms = get_or<std::vector<std::string>>(e, "algorithms", {"auto"});
        int reps = get_or<int>(e, "repetitions", 1);
        auto seed = get_or<std::uint64_t>(e, "seed", 0);
        auto ks = get_or<std::vector<int>>(e, "ks", {});
        std::optional<Rational> factor;
        if (e.contains("base_case_factor"))
            factor = parse_rational(e.at("base_case_factor").get<std::string>());
        for (int size : sizes)
            for (int rep = 0; rep < reps; ++rep) {
                GenParams gp = g;
                gp.seed = seed + rep;
                if (g.model == "grid" || g.model == "uniform-random")
                    gp.n = size;
                else
                    gp.m = size;
                if (g.model == "uniform-random")
                    gp.k = g.k;
                Instance inst = generate(gp);
                std::uint64_t cands = root_candidates(inst);
                std::vector<int> budgets = ks.empty() ? std::vector<int>{inst.k} : ks;
                for (int k : budgets)
                    for (const auto& a : algorithms)
                        jobs.push_back({inst, g.model, size, k, a, gp.seed, cands, factor});
            }
    }
    return jobs;
}

BigInt binomial(std::uint64_t n, int k)
{
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, static_cast<unsigned long>(k));
    return out;
}

BenchRow run_job(const Job& job)
{
    BenchRow row;
    row.model = job.model;
    row.family = std::string(family_name(job.inst.family));
    row.n = static_cast<int>(job.inst.points.size());
    row.k = job.k;
    row.size = job.size;
    row.seed = job.seed;
    row.candidates = job.root_candidates;
    row.naive_bound = binomial(job.root_candidates, job.k).get_str();
    SolveOptions opts;
    opts.algorithm = job.algorithm;
    opts.k = job.k;
    opts.base_case_factor = job.base_case_factor;
    row.algorithm = resolve_algorithm(job.algorithm, row.n);
    try {
        auto res = solve(job.inst, opts);
        row.decision = res.decision ? "yes" : "no";
        row.nodes = res.stats.nodes;
        row.leaves = res.stats.leaves;
        row.wall_ms = res.stats.wall_ms;
    } catch (const CapExceeded&) {
        row.decision = "cap";
    }
    return row;
}

auto row_key(const BenchRow& r)
{
    return std::tie(r.model, r.family, r.size, r.seed, r.n, r.k, r.algorithm);
}

} // namespace

BenchReport run_bench(const json& suite, int jobs)
{
    auto work = expand(suite);
    BenchReport report;
    report.rows.resize(work.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j; (j = next.fetch_add(1)) < work.size();)
            report.rows[j] = run_job(work[j]);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    std::sort(report.rows.begin(), report.rows.end(),
              [](const BenchRow& a, const BenchRow& b) { return row_key(a) < row_key(b); });

    std::map<std::tuple<std::string, std::string, int, std::uint64_t, int>, std::string> seen;
    for (const auto& r : report.rows) {
        if (r.decision == "cap")
            continue;
        auto key = std::make_tuple(r.model, r.family, r.size, r.seed, r.k);
        auto [it, fresh] = seen.emplace(key, r.decision);
        if (!fresh && it->second != r.decision)
            report.disagreements.push_back(r.model + " " + r.family + " size=" + std::to_string(r.size) +
                                           " seed=" + std::to_string(r.seed) + " k=" + std::to_string(r.k));
    }
    return report;
}

std::string bench_csv(const std::vector<BenchRow>& rows)
{
    std::ostringstream os;
    os << "model,n,k,algorithm,decision,nodes,leaves,candidates,naive_bound,wall_ms\n";
    for (const auto& r : rows) {
        os << r.model << "," << r.n << "," << r.k << "," << r.algorithm << "," << r.decision << "," << r.nodes
           << "," << r.leaves << "," << r.candidates << "," << r.naive_bound << ",";
        os.setf(std::ios::fixed);
        os.precision(3);
        os << r.wall_ms << "\n";
    }
    return os.str();
}

} // namespace geocover
