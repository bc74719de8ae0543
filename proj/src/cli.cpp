#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>
#include <utility>

#include "CLI11.hpp"
#include "canonical.hpp"
#include "constructor.hpp"
#include "degseq.hpp"
#include "graph.hpp"
#include "json.hpp"
#include "packing.hpp"
#include "rat.hpp"

namespace tripack {
namespace {

std::string seq_csv(const std::vector<int>& seq) {
    std::string s;
    for (size_t i = 0; i < seq.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(seq[i]);
    }
    return s;
}

std::string seq_filename(const std::vector<int>& seq) {
    std::string s = "family_";
    for (size_t i = 0; i < seq.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(seq[i]);
    }
    return s + ".g6";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    require(f.good(), "cannot write " + path);
    f << text;
    f.flush();
    require(f.good(), "write failed for " + path);
}

// JSON payload goes to the --out file when given, to the report stream
// otherwise.
void emit_json(const std::string& json, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << json << "\n";
    else
        write_file(out_path, json + "\n");
}

int cmd_enumerate(int n, long m, const std::string& out_dir, std::ostream& out) {
    require(n >= 1 && n <= kMaxVertices,
            "n must be between 1 and " + std::to_string(kMaxVertices) + ", got " +
                std::to_string(n));
    long cap = (long)n * (n - 1) / 2;
    require(m >= 0 && m <= cap,
            "too many edges: C(" + std::to_string(n) + ",2) = " + std::to_string(cap) +
                " allowed, got " + std::to_string(m));
    auto families = expand_families(build_dag(sink_sequences(n, m)));

    std::ostringstream text;
    text << "enumerate n=" << n << " m=" << m << "\n";
    long total = 0;
    for (const auto& [seq, members] : families) {
        text << "seq " << seq_csv(seq) << " count " << members.size() << " file "
             << seq_filename(seq) << "\n";
        total += (long)members.size();
    }
    text << "total " << total << " families " << families.size() << "\n";
    out << text.str();

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(out_dir + "/manifest.txt", text.str());
        for (const auto& [seq, members] : families) {
            std::string body;
            for (const auto& g6 : members) body += g6 + "\n";
            write_file(out_dir + "/" + seq_filename(seq), body);
        }
    }
    return 0;
}

int cmd_prove(int n, int a, int jobs, const std::string& out_dir, std::ostream& out,
              std::ostream& err) {
    require(n >= 5 && n <= 13,
            "exhaustive sweeps cover 5 to 13 vertices, got " + std::to_string(n));
    require(a >= 0 && a <= 4, "slack a must be between 0 and 4, got " + std::to_string(a));
    long missing = (long)n - 4 + a;
    long edges = (long)n * (n - 1) / 2 - missing;
    std::vector<Graph> graphs = enumerate_graphs(n, edges);
    require(!graphs.empty(), "no graphs with " + std::to_string(edges) + " edges on " +
                                 std::to_string(n) + " vertices");

    std::vector<Rat> opt(graphs.size());
    std::vector<FractionalPacking> packs(graphs.size());
    std::atomic<size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= graphs.size()) return;
            auto [u, w] = min_uncovered(PackingProblem(graphs[i], rat_of(1, 2), Rat(a)));
            opt[i] = u;
            packs[i] = std::move(w);
        }
    };
    auto t0 = std::chrono::steady_clock::now();
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    size_t fails = 0, arg = 0;
    for (size_t i = 0; i < graphs.size(); ++i) {
        if (opt[i] > Rat(a)) ++fails;
        if (opt[i] > opt[arg]) arg = i;
    }
    std::ostringstream rep;
    rep << "prove n=" << n << " a=" << a << "\n";
    rep << "graphs " << graphs.size() << "\n";
    rep << "pass " << graphs.size() - fails << " fail " << fails << "\n";
    rep << "max_uncovered " << rat_str(opt[arg]) << " graph " << graph6_encode(graphs[arg])
        << "\n";
    for (size_t i = 0; i < graphs.size(); ++i)
        if (opt[i] > Rat(a))
            rep << "fail " << graph6_encode(graphs[i]) << " uncovered " << rat_str(opt[i])
                << "\n";
    out << rep.str();
    err << "wall time " << std::fixed << std::setprecision(2) << secs << " s\n";

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(out_dir + "/report.txt", rep.str());
        std::string body;
        for (size_t i = 0; i < graphs.size(); ++i)
            body +=
                certificate_to_json(make_certificate(graphs[i], rat_of(1, 2), packs[i],
                                                     "optimal")) +
                "\n";
        write_file(out_dir + "/certificates.jsonl", body);
    }
    return fails ? 1 : 0;
}

WeightedGraph load_capacities(const Graph& g, const std::string& path) {
    std::ifstream f(path);
    require(f.good(), "cannot read " + path);
    WeightedGraph wg(g);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        int u, v;
        std::string val;
        require(bool(is >> u >> v >> val),
                path + ":" + std::to_string(lineno) + ": expected \"u v p/q\"");
        require(u >= 0 && v >= 0 && u < g.order() && v < g.order() && u != v,
                path + ":" + std::to_string(lineno) + ": vertex pair out of range");
        require(g.has_edge(u, v),
                path + ":" + std::to_string(lineno) + ": not an edge of the graph");
        Rat w = rat_parse(val);
        require(w >= 0 && w <= 1,
                path + ":" + std::to_string(lineno) + ": capacity must lie in [0,1]");
        wg.set_weight(u, v, w);
    }
    return wg;
}

int cmd_solve(const std::string& g6, const std::string& beta_s, const std::string& cap_path,
              const std::string& out_path, std::ostream& out) {
    Graph g = graph6_decode(g6);
    Rat beta = rat_parse(beta_s);
    require(beta > 0 && beta <= 1, "beta must lie in (0,1], got " + rat_str(beta));
    if (cap_path.empty()) {
        auto [uncovered, w] = min_uncovered(PackingProblem(g, beta, Rat(0)));
        out << "uncovered " << rat_str(uncovered) << "\n";
        emit_json(certificate_to_json(make_certificate(g, beta, w, "optimal")), out_path, out);
        return 0;
    }
    WeightedGraph wg = load_capacities(g, cap_path);
    auto [uncovered, w] = min_uncovered(PackingProblem(wg, beta, Rat(0)));
    // capacities are tied to the input labels, so no canonical relabelling
    nlohmann::ordered_json j;
    j["graph"] = g6;
    j["beta"] = rat_str(beta);
    j["uncovered"] = rat_str(uncovered);
    auto tris = nlohmann::ordered_json::array();
    for (const auto& [t, wt] : w.weights) tris.push_back({t.a, t.b, t.c, rat_str(wt)});
    j["triangles"] = std::move(tris);
    j["note"] = "capacitated optimum; labels follow the input graph";
    out << "uncovered " << rat_str(uncovered) << "\n";
    emit_json(j.dump(), out_path, out);
    return 0;
}

int cmd_construct(const std::string& g6, int a, const std::string& out_path, std::ostream& out) {
    Graph g = graph6_decode(g6);
    ConstructResult res = construct_packing_traced(g, a);
    std::string note = "construct trace: ";
    constexpr size_t kTraceLimit = 40;
    size_t shown = std::min(res.trace.size(), kTraceLimit);
    for (size_t i = 0; i < shown; ++i) {
        if (i) note += "; ";
        note += res.trace[i];
    }
    if (res.trace.size() > kTraceLimit)
        note += "; ... " + std::to_string(res.trace.size() - kTraceLimit) + " more";
    PackingCertificate cert = make_certificate(g, rat_of(1, 2), res.packing, note);
    out << "uncovered " << rat_str(cert.uncovered) << "\n";
    emit_json(certificate_to_json(cert), out_path, out);
    return 0;
}

int cmd_verify(const std::string& cert_path, const std::string& g6, bool has_a, int a,
               const std::string& beta_s, std::ostream& out) {
    std::ifstream f(cert_path);
    require(f.good(), "cannot read " + cert_path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(f, line))
        if (!line.empty()) lines.push_back(line);
    require(!lines.empty(), cert_path + " holds no certificates");

    std::string want_graph;
    if (!g6.empty()) want_graph = canonical_g6(graph6_decode(g6));
    std::ostringstream rep;
    rep << "verify " << cert_path << "\n";
    rep << "certificates " << lines.size() << "\n";
    size_t bad = 0;
    for (size_t k = 0; k < lines.size(); ++k) {
        PackingCertificate cert = certificate_from_json(lines[k]);
        std::vector<std::string> problems;
        if (!want_graph.empty() && canonical_g6(graph6_decode(cert.graph6)) != want_graph)
            problems.push_back("certificate graph " + cert.graph6 +
                               " does not match the given graph");
        if (!beta_s.empty() && cert.beta != rat_parse(beta_s))
            problems.push_back("certificate beta " + rat_str(cert.beta) + " does not match " +
                               beta_s);
        if (has_a && cert.uncovered > Rat(a))
            problems.push_back("claimed uncovered " + rat_str(cert.uncovered) +
                               " exceeds the bound a = " + std::to_string(a));
        PackingReport r = verify_certificate(cert);
        if (!r.pass) problems.insert(problems.end(), r.problems.begin(), r.problems.end());
        if (!problems.empty()) {
            ++bad;
            for (const auto& p : problems) rep << "line " << k + 1 << " problem " << p << "\n";
        }
    }
    rep << (bad ? "fail" : "pass") << "\n";
    out << rep.str();
    return bad ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact fractional triangle packings of near-complete graphs"};
    app.name("tripack");
    app.require_subcommand(1);

    int jobs = 1;
    if (const char* env = std::getenv("TRIPACK_JOBS")) {
        int j = std::atoi(env);
        if (j >= 1) jobs = j;
    }

    int en_n = 0;
    long en_m = 0;
    std::string en_out;
    CLI::App* enumerate = app.add_subcommand(
        "enumerate", "list all graphs with a given order and edge count, by degree sequence");
    enumerate->add_option("--n", en_n, "number of vertices")->required();
    enumerate->add_option("--m", en_m, "number of edges")->required();
    enumerate->add_option("--out", en_out, "directory for family files and manifest");

    int pr_n = 0, pr_a = 0;
    std::string pr_out;
    CLI::App* prove = app.add_subcommand(
        "prove", "check uncovered weight <= a over every graph with n-4+a missing pairs");
    prove->add_option("--n", pr_n, "number of vertices (5 to 13)")->required();
    prove->add_option("--a", pr_a, "uncovered-weight bound (0 to 4)")->required();
    prove->add_option("--jobs", jobs, "worker threads (default: TRIPACK_JOBS or 1)");
    prove->add_option("--out", pr_out, "directory for report and certificates");

    std::string so_g6, so_beta = "1/2", so_caps, so_out;
    CLI::App* solve =
        app.add_subcommand("solve", "exact minimum uncovered weight of one graph");
    solve->add_option("--graph6", so_g6, "graph in graph6 notation")->required();
    solve->add_option("--beta", so_beta, "triangle weight cap p/q (default 1/2)");
    solve->add_option("--capacities", so_caps, "file of per-edge capacities \"u v p/q\"");
    solve->add_option("--out", so_out, "file for the certificate JSON");

    std::string co_g6, co_out;
    int co_a = 0;
    CLI::App* construct = app.add_subcommand(
        "construct", "build a verified packing with uncovered weight at most a");
    construct->add_option("--graph6", co_g6, "graph in graph6 notation")->required();
    construct->add_option("--a", co_a, "uncovered-weight bound (0 to 4)")->required();
    construct->add_option("--out", co_out, "file for the certificate JSON");

    std::string ve_cert, ve_g6, ve_beta;
    int ve_a = 0;
    CLI::App* verify = app.add_subcommand(
        "verify", "re-check certificates in exact arithmetic, one JSON per line");
    verify->add_option("--cert", ve_cert, "certificate file (JSON lines)")->required();
    verify->add_option("--graph6", ve_g6, "require this graph, up to relabelling");
    CLI::Option* ve_a_opt = verify->add_option("--a", ve_a, "require uncovered weight <= a");
    verify->add_option("--beta", ve_beta, "require this triangle weight cap");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(enumerate)) return cmd_enumerate(en_n, en_m, en_out, out);
        if (app.got_subcommand(prove)) return cmd_prove(pr_n, pr_a, jobs, pr_out, out, err);
        if (app.got_subcommand(solve)) return cmd_solve(so_g6, so_beta, so_caps, so_out, out);
        if (app.got_subcommand(construct)) return cmd_construct(co_g6, co_a, co_out, out);
        if (app.got_subcommand(verify))
            return cmd_verify(ve_cert, ve_g6, ve_a_opt->count() > 0, ve_a, ve_beta, out);
    } catch (const Error& e) {
        err << "tripack: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "tripack: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace tripack
