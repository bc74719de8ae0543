#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "degseq.hpp"
#include "doctest.h"
#include "graph.hpp"
#include "packing.hpp"
#include "test_util.hpp"

using namespace tripack;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::filesystem::path fresh_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("tripack_test_" + tag);
    std::filesystem::remove_all(dir);
    return dir;
}

const char* kK4 = "C~";
const char* kK5 = "D~{";
const char* kK6MinusTwoDisjoint = "E]~w";

}  // namespace

TEST_CASE("cli rejects bad usage with exit code 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"solve"}).code == 2);
    CHECK(cli({"enumerate", "--n", "4", "--m", "7"}).code == 2);
    CHECK(cli({"enumerate", "--n", "4", "--m", "7"}).err.find("too many edges") !=
          std::string::npos);
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"--help"}).out.find("tripack") != std::string::npos);
}

TEST_CASE("enumerate writes one family file per degree sequence") {
    CliRun one = cli({"enumerate", "--n", "3", "--m", "3"});
    CHECK(one.code == 0);
    CHECK(one.out == "enumerate n=3 m=3\nseq 2,2,2 count 1 file family_2-2-2.g6\n"
                     "total 1 families 1\n");

    auto dir = fresh_dir("enum");
    CliRun run = cli({"enumerate", "--n", "7", "--m", "18", "--out", dir.string()});
    REQUIRE(run.code == 0);
    CHECK(slurp(dir / "manifest.txt") == run.out);

    size_t census = enumerate_graphs(7, 18).size();
    auto lines = lines_of(run.out);
    REQUIRE(lines.size() >= 2);
    std::string last = lines.back();
    CHECK(last.find("total " + std::to_string(census) + " ") == 0);

    size_t from_files = 0;
    for (size_t i = 1; i + 1 < lines.size(); ++i) {
        std::istringstream is(lines[i]);
        std::string kw_seq, seq, kw_count, kw_file, file;
        long count;
        REQUIRE(bool(is >> kw_seq >> seq >> kw_count >> count >> kw_file >> file));
        CHECK(kw_seq == "seq");
        auto members = lines_of(slurp(dir / file));
        CHECK((long)members.size() == count);
        from_files += members.size();
        for (const auto& g6 : members) CHECK(graph6_decode(g6).edge_count() == 18);
    }
    CHECK(from_files == census);
    std::filesystem::remove_all(dir);
}

TEST_CASE("prove sweeps are byte-stable and their certificates re-verify") {
    auto dir = fresh_dir("prove");
    CliRun run = cli({"prove", "--n", "7", "--a", "0", "--out", dir.string()});
    CHECK(run.code == 0);
    auto lines = lines_of(run.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "prove n=7 a=0");
    CHECK(lines[1] == "graphs 5");
    CHECK(lines[2] == "pass 5 fail 0");
    CHECK(lines[3].find("max_uncovered 0 graph ") == 0);
    CHECK(run.err.find("wall time") != std::string::npos);
    CHECK(slurp(dir / "report.txt") == run.out);
    CHECK(lines_of(slurp(dir / "certificates.jsonl")).size() == 5);

    CliRun again = cli({"prove", "--n", "7", "--a", "0", "--jobs", "3"});
    CHECK(again.out == run.out);

    CliRun check = cli({"verify", "--cert", (dir / "certificates.jsonl").string(), "--a", "0"});
    CHECK(check.code == 0);
    CHECK(lines_of(check.out).back() == "pass");
    std::filesystem::remove_all(dir);
}

TEST_CASE("prove reports the graphs that break the claimed bound") {
    // two ways to drop 2 edges from K6; neither decomposes fully
    CliRun run = cli({"prove", "--n", "6", "--a", "0"});
    CHECK(run.code == 1);
    auto lines = lines_of(run.out);
    CHECK(lines[1] == "graphs 2");
    CHECK(lines[2] == "pass 0 fail 2");
    size_t fail_lines = 0;
    for (const auto& l : lines)
        if (l.find("fail ") == 0) ++fail_lines;
    CHECK(fail_lines == 2);
}

TEST_CASE("solve reports the exact optimum with a certificate") {
    CliRun k5 = cli({"solve", "--graph6", kK5});
    CHECK(k5.code == 0);
    auto lines = lines_of(k5.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "uncovered 0");
    CHECK(lines[1].find("\"note\":\"optimal\"") != std::string::npos);
    PackingCertificate cert = certificate_from_json(lines[1]);
    CHECK(verify_certificate(cert).pass);

    CHECK(cli({"solve", "--graph6", kK4, "--beta", "1/2"}).out.find("uncovered 0\n") == 0);
    CHECK(cli({"solve", "--graph6", kK6MinusTwoDisjoint}).out.find("uncovered 1\n") == 0);
    CHECK(cli({"solve", "--graph6", "not a graph"}).code == 2);
}

TEST_CASE("solve takes per-edge capacities tied to the input labels") {
    auto dir = fresh_dir("caps");
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "caps.txt");
        f << "# tighten two edges\n0 1 1/2\n2 3 2/3\n";
    }
    CliRun run = cli({"solve", "--graph6", kK5, "--capacities", (dir / "caps.txt").string()});
    CHECK(run.code == 0);
    auto lines = lines_of(run.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].find("capacitated") != std::string::npos);

    WeightedGraph wg(graph6_decode(kK5));
    wg.set_weight(0, 1, rat_of(1, 2));
    wg.set_weight(2, 3, rat_of(2, 3));
    auto [uncovered, w] = min_uncovered(PackingProblem(wg, rat_of(1, 2), Rat(0)));
    CHECK(lines[0] == "uncovered " + rat_str(uncovered));

    CliRun bad = cli({"solve", "--graph6", kK6MinusTwoDisjoint, "--capacities",
                      (dir / "caps.txt").string()});
    CHECK(bad.code == 2);  // (0,1) is not an edge there
    std::filesystem::remove_all(dir);
}

TEST_CASE("construct emits a verified certificate with its recursion trace") {
    testutil::Rng rng(0xc11u);
    Graph g = testutil::random_near_complete(14, 11, rng);
    auto dir = fresh_dir("construct");
    std::filesystem::create_directories(dir);
    auto cert_path = dir / "cert.json";
    CliRun run = cli({"construct", "--graph6", graph6_encode(g), "--a", "1", "--out",
                      cert_path.string()});
    REQUIRE(run.code == 0);
    CHECK(run.out.find("uncovered ") == 0);

    PackingCertificate cert = certificate_from_json(slurp(cert_path));
    CHECK(cert.note.find("construct trace: depth=0 n=14") == 0);
    CHECK(verify_certificate(cert).pass);
    CHECK(cert.uncovered <= Rat(1));

    CliRun check = cli({"verify", "--cert", cert_path.string(), "--a", "1", "--graph6",
                        graph6_encode(g)});
    CHECK(check.code == 0);

    CHECK(cli({"construct", "--graph6", kK6MinusTwoDisjoint, "--a", "0"}).code == 2);
    CHECK(cli({"construct", "--graph6", kK6MinusTwoDisjoint, "--a", "0"}).err.find(
              "at least 7 vertices") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify cross-checks the claims it is given") {
    auto dir = fresh_dir("verify");
    std::filesystem::create_directories(dir);
    auto cert_path = dir / "cert.json";
    CliRun make = cli({"solve", "--graph6", kK6MinusTwoDisjoint, "--out", cert_path.string()});
    REQUIRE(make.code == 0);

    CHECK(cli({"verify", "--cert", cert_path.string()}).code == 0);
    CliRun wrong_a = cli({"verify", "--cert", cert_path.string(), "--a", "0"});
    CHECK(wrong_a.code == 1);
    CHECK(wrong_a.out.find("exceeds the bound a = 0") != std::string::npos);
    CliRun wrong_beta = cli({"verify", "--cert", cert_path.string(), "--beta", "1/3"});
    CHECK(wrong_beta.code == 1);
    CHECK(wrong_beta.out.find("does not match") != std::string::npos);
    CliRun wrong_graph = cli({"verify", "--cert", cert_path.string(), "--graph6", kK5});
    CHECK(wrong_graph.code == 1);

    CHECK(cli({"verify", "--cert", (dir / "nothing.json").string()}).code == 2);
    {
        std::ofstream f(dir / "mangled.json");
        f << "{\"graph\": 42}\n";
    }
    CHECK(cli({"verify", "--cert", (dir / "mangled.json").string()}).code == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("worker count comes from TRIPACK_JOBS unless --jobs overrides") {
    CliRun base = cli({"prove", "--n", "6", "--a", "1"});
    setenv("TRIPACK_JOBS", "2", 1);
    CliRun env = cli({"prove", "--n", "6", "--a", "1"});
    unsetenv("TRIPACK_JOBS");
    CHECK(env.code == base.code);
    CHECK(env.out == base.out);
}
