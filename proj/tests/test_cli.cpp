#include <doctest.h>

#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

fs::path scratch()
{
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("geocover_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run cli(const std::string& args)
{
    auto out = scratch() / "stdout.txt";
    std::string cmd = std::string("\"") + GEOCOVER_CLI + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                      (scratch() / "stderr.txt").string() + "\"";
    int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
}

std::string file(const std::string& name) { return (scratch() / name).string(); }

void write(const std::string& name, const std::string& text)
{
    std::ofstream(scratch() / name) << text;
}

} // namespace

TEST_CASE("solve on the 3x3 grid with the branch solver agrees with the oracle")
{
    REQUIRE(cli("gen --model grid --n 3 --seed 1 --out " + file("grid.json")).code == 0);
    auto r = cli("solve --input " + file("grid.json") + " --algorithm branch --k 3 --verify --witness");
    REQUIRE(r.code == 0);
    auto rec = nlohmann::json::parse(r.out);
    CHECK(rec.at("decision") == "yes");
    CHECK(rec.at("oracle_agrees") == true);
    CHECK(rec.at("witness").size() <= 3);
    CHECK(rec.at("algorithm") == "branch");

    auto no = cli("solve --input " + file("grid.json") + " --algorithm branch --k 2 --verify");
    REQUIRE(no.code == 0);
    CHECK(nlohmann::json::parse(no.out).at("decision") == "no");
}

TEST_CASE("solve --min with inclusion-exclusion gives 3 on the grid")
{
    REQUIRE(cli("gen --model grid --n 3 --seed 1 --out " + file("grid.json")).code == 0);
    auto r = cli("solve --input " + file("grid.json") + " --algorithm ie --min");
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("opt") == 3);
}

TEST_CASE("exit codes")
{
    REQUIRE(cli("gen --model uniform-random --n 30 --seed 3 --out " + file("big.json")).code == 0);
    CHECK(cli("solve --input " + file("big.json") + " --algorithm ie --k 3").code == 3);
    CHECK(cli("solve --input " + file("big.json") + " --algorithm oracle --k 3").code == 3);

    write("bad.json", R"({"dimension": 2, "family": "line2", "k": 1, "points": [["0.5", "1"]]})");
    CHECK(cli("solve --input " + file("bad.json")).code == 2);
    write("broken.json", "{\"dimension\": 2,");
    CHECK(cli("solve --input " + file("broken.json")).code == 2);
    CHECK(cli("solve --input " + file("missing.json")).code == 2);
    CHECK(cli("solve").code == 2);
    CHECK(cli("solve --input " + file("grid.json") + " --algorithm sideways").code == 2);

    write("dup.json", R"({"dimension": 2, "family": "line2", "k": 1, "points": [["0", "1"], ["0", "1"], ["2", "3"]]})");
    CHECK(cli("solve --input " + file("dup.json")).code == 2);
    auto dedup = cli("solve --input " + file("dup.json") + " --dedup");
    CHECK(dedup.code == 0);
    CHECK(nlohmann::json::parse(dedup.out).at("n") == 2);
}

TEST_CASE("kernelize writes a reduced instance")
{
    write("line.json", R"({"dimension": 2, "family": "line2", "k": 2, "points": [["0", "0"], ["1", "0"], ["2", "0"], ["3", "0"], ["5", "5"]]})");
    REQUIRE(cli("kernelize --input " + file("line.json") + " --k 2 --out " + file("kernel.json")).code == 0);
    auto k = nlohmann::json::parse(slurp(file("kernel.json")));
    CHECK(k.at("k") == 1);
    CHECK(k.at("points").size() == 1);
    CHECK(k.at("metadata").at("kernel").at("forced").size() == 1);
}

TEST_CASE("seeded generation and single-threaded solving are byte-identical")
{
    for (int round = 0; round < 2; ++round)
        REQUIRE(cli("gen --model on-curves --family circle2 --k 2 --m 5 --noise 1 --seed 9 --out " +
                     file("c" + std::to_string(round) + ".json"))
                    .code == 0);
    CHECK(slurp(file("c0.json")) == slurp(file("c1.json")));
    auto a = cli("solve --input " + file("c0.json") + " --algorithm branch --witness --threads 1");
    auto b = cli("solve --input " + file("c0.json") + " --algorithm branch --witness --threads 1");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("bench prints a header and agreeing rows")
{
    write("suite.json", R"({"entries": [{"model": "grid", "family": "line2", "sizes": [2, 3], "algorithms": ["ie", "branch", "oracle"]}]})");
    auto r = cli("bench --suite " + file("suite.json"));
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "model,n,k,algorithm,decision,nodes,leaves,candidates,naive_bound,wall_ms");
    int rows = 0;
    for (std::string line; std::getline(lines, line);)
        rows += !line.empty();
    CHECK(rows == 6);

    write("empty.json", R"({"entries": []})");
    auto e = cli("bench --suite " + file("empty.json"));
    CHECK(e.code == 0);
    CHECK(e.out == header + "\n");
}
