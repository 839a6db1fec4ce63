#include "geocover/bench.hpp"
#include "geocover/errors.hpp"
#include "geocover/generate.hpp"
#include "geocover/solve.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace geocover;

namespace {

int run(int argc, char** argv)
{
    CLI::App app{"exact covering of points by curves and planes"};
    app.require_subcommand(1);

    auto* solve_cmd = app.add_subcommand("solve", "decide or minimize a cover for an instance file");
    std::string input;
    std::string factor;
    bool dedup = false;
    int k = -1;
    SolveOptions sopts;
    solve_cmd->add_option("--input", input, "instance file")->required();
    solve_cmd->add_option("--algorithm", sopts.algorithm, "ie, branch, oracle or auto")
        ->check(CLI::IsMember({"ie", "branch", "oracle", "auto"}));
    solve_cmd->add_option("--k", k, "budget (defaults to the instance's k)");
    solve_cmd->add_flag("--min", sopts.min, "compute the minimum cover size");
    solve_cmd->add_flag("--witness", sopts.witness, "extract and check a cover");
    solve_cmd->add_flag("--verify", sopts.verify, "cross-check against the oracle");
    solve_cmd->add_option("--threads", sopts.threads, "worker threads");
    solve_cmd->add_option("--base-case-factor", factor, "base case multiplier as a fraction");
    solve_cmd->add_flag("--timing", sopts.timing, "record wall-clock time");
    solve_cmd->add_flag("--dedup", dedup, "drop duplicate points with a warning");
    solve_cmd->add_option("--ie-cap", sopts.ie_cap, "largest inclusion-exclusion ground set");
    solve_cmd->add_option("--oracle-cap", sopts.oracle_cap, "largest oracle instance");
    solve_cmd->add_option("--seed", sopts.kernel_seed, "seed of the plane kernel");

    auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
    GenParams g;
    std::string family = "line2";
    std::string out;
    gen_cmd->add_option("--model", g.model, "grid, on-curves, uniform-random or degenerate-plane")
        ->required()
        ->check(CLI::IsMember({"grid", "on-curves", "uniform-random", "degenerate-plane"}));
    gen_cmd->add_option("--family", family, "line2, circle2, vparabola2 or plane3");
    gen_cmd->add_option("--n", g.n, "grid side or number of points");
    gen_cmd->add_option("--k", g.k, "planted objects or budget");
    gen_cmd->add_option("--m", g.m, "points per planted object");
    gen_cmd->add_option("--noise", g.noise, "extra random points");
    gen_cmd->add_option("--ghosts", g.ghosts, "off-line points per degenerate plane");
    gen_cmd->add_option("--range", g.range, "coordinate range");
    gen_cmd->add_option("--seed", g.seed, "random seed")->required();
    gen_cmd->add_option("--out", out, "output file")->required();

    auto* kern_cmd = app.add_subcommand("kernelize", "write the kernel of an instance");
    std::string kin, kout;
    int kk = 0;
    std::uint64_t kseed = 0;
    kern_cmd->add_option("--input", kin, "instance file")->required();
    kern_cmd->add_option("--k", kk, "budget")->required();
    kern_cmd->add_option("--out", kout, "output file")->required();
    kern_cmd->add_option("--seed", kseed, "seed for re-added points");
    kern_cmd->add_flag("--dedup", dedup, "drop duplicate points with a warning");

    auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite and print CSV");
    std::string suite;
    int jobs = 1;
    bench_cmd->add_option("--suite", suite, "suite file")->required();
    bench_cmd->add_option("--jobs", jobs, "suite entries run concurrently");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    ParseOptions popts{dedup, &std::cerr};
    if (*solve_cmd) {
        if (k >= 0)
            sopts.k = k;
        if (!factor.empty())
            sopts.base_case_factor = parse_rational(factor);
        Instance inst = read_instance(input, popts);
        auto res = solve(inst, sopts);
        std::cout << result_record(inst, sopts, res).dump(2) << "\n";
    } else if (*gen_cmd) {
        g.family = parse_family(family);
        write_text_file(out, serialize_instance(generate(g)));
    } else if (*kern_cmd) {
        Instance inst = read_instance(kin, popts);
        write_text_file(kout, serialize_instance(kernelize_instance(inst, kk, kseed)));
    } else if (*bench_cmd) {
        std::ifstream in(suite);
        if (!in)
            throw InvalidInput("cannot read " + suite);
        nlohmann::json spec;
        try {
            spec = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw InvalidInput(std::string("malformed suite: ") + e.what());
        }
        auto report = run_bench(spec, jobs);
        std::cout << bench_csv(report.rows);
        for (const auto& d : report.disagreements)
            std::cerr << "disagreement: " << d << "\n";
        if (!report.disagreements.empty())
            throw VerificationMismatch("solvers disagree on " + std::to_string(report.disagreements.size()) +
                                       " instances");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const VerificationMismatch& e) {
        std::cerr << "verification mismatch: " << e.what() << "\n";
        return 4;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
}
