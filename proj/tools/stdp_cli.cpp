#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "stdp/io.hpp"
#include "stdp/oracle.hpp"
#include "stdp/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stdp;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kParse = 2;
constexpr int kNonConservative = 3;
constexpr int kInfeasibleParams = 4;

struct Global {
    bool json = false;
    std::uint64_t seed = 1;
    int threads = 1;
};

void print_certificate(const ConservativenessCertificate& cert, bool as_json) {
    if (as_json) {
        std::cout << json{{"conservative", false}, {"cycle", cert.cycle}, {"weight", cert.weight / 2}}.dump() << "\n";
        return;
    }
    std::cout << "negative cycle: " << path_text(cert.cycle) << " (weight " << cert.weight / 2 << ")\n";
}

// Runs body(i) for i in [0, count) on up to `threads` workers.
template <class Body>
void parallel_for(int count, int threads, Body&& body) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) body(i);
        });
    for (auto& th : pool) th.join();
}

int cmd_solve(const Global& g, const std::string& file, const std::string& dot, bool assert_invariants) {
    Instance inst;
    try {
        inst = load_instance(file);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
    SolveOptions opt;
    opt.assert_invariants = assert_invariants;
    SolveStats stats;
    std::optional<Solution> sol;
    try {
        sol = solve(inst, opt, &stats);
    } catch (const NonConservativeInput& e) {
        print_certificate(e.certificate(), g.json);
        return kNonConservative;
    }
    if (g.json) {
        std::cout << solution_to_json(sol) << "\n";
    } else if (sol) {
        std::cout << "weight " << sol->weight / 2 << "\n" << path_text(sol->p1) << "\n" << path_text(sol->p2) << "\n";
    } else {
        std::cout << "INFEASIBLE\n";
    }
    if (!dot.empty()) {
        std::ofstream out(dot);
        out << to_dot(inst, sol ? &*sol : nullptr);
    }
    for (const auto& v : stats.violations) std::cerr << "invariant: " << v << "\n";
    return stats.violations.empty() ? kOk : kFailure;
}

int cmd_check(const Global& g, const std::string& file) {
    Instance inst;
    try {
        inst = load_instance(file);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
    auto cert = is_conservative(inst);
    if (!cert.ok) {
        print_certificate(cert, g.json);
        return kNonConservative;
    }
    int c = negative_forest(inst).c();
    if (g.json)
        std::cout << json{{"conservative", true}, {"c", c}}.dump() << "\n";
    else
        std::cout << "conservative, c = " << c << "\n";
    return kOk;
}

int cmd_gen(const Global& g, GenParams p, const std::string& out) {
    p.seed = g.seed;
    Instance inst;
    try {
        inst = generate_instance(p);
    } catch (const ParamsInfeasible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasibleParams;
    }
    std::string text = instance_to_json(inst);
    if (out.empty() || out == "-") {
        std::cout << text << "\n";
    } else {
        std::ofstream f(out);
        f << text << "\n";
    }
    int c = negative_forest(inst).c();
    if (g.json)
        std::cerr << json{{"c", c}, {"m", inst.m()}}.dump() << "\n";
    else
        std::cerr << "c = " << c << ", m = " << inst.m() << "\n";
    return kOk;
}

struct CompareRow {
    std::string name;
    std::string status;  // agree, MISMATCH, skipped
    std::optional<Weight> solver, oracle;
};

int cmd_compare(const Global& g, const std::string& dir, int count, int n_min, int n_max, int c_max,
                double density) {
    std::vector<std::pair<std::string, Instance>> corpus;
    if (!dir.empty()) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(dir))
            if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            try {
                corpus.push_back({f.filename().string(), load_instance(f.string())});
            } catch (const ParseError& e) {
                std::cerr << f << ": " << e.what() << "\n";
                return kParse;
            }
        }
    } else {
        for (int k = 0; k < count; ++k) {
            GenParams p;
            p.n = n_min + k % (n_max - n_min + 1);
            p.c = std::min(k % (c_max + 1), p.n / 2);
            p.density = density;
            p.seed = g.seed + k;
            try {
                corpus.push_back({"gen-" + std::to_string(p.seed), generate_instance(p)});
            } catch (const ParamsInfeasible& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kInfeasibleParams;
            }
        }
    }

    std::vector<CompareRow> rows(corpus.size());
    parallel_for(static_cast<int>(corpus.size()), g.threads, [&](int i) {
        CompareRow& row = rows[i];
        row.name = corpus[i].first;
        const Instance& inst = corpus[i].second;
        try {
            auto a = solve(inst);
            auto b = brute_force_stdp(inst);
            if (a) row.solver = a->weight;
            if (b) row.oracle = b->weight;
            row.status = row.solver == row.oracle ? "agree" : "MISMATCH";
        } catch (const TooLarge&) {
            row.status = "skipped";
        } catch (const NonConservativeInput&) {
            row.status = "skipped";
        }
    });

    int agree = 0, compared = 0;
    auto show = [](const std::optional<Weight>& w) { return w ? std::to_string(*w / 2) : std::string("none"); };
    json out = json::array();
    for (const auto& r : rows) {
        if (r.status != "skipped") ++compared;
        if (r.status == "agree") ++agree;
        if (g.json)
            out.push_back({{"instance", r.name}, {"status", r.status}, {"solver", show(r.solver)},
                           {"oracle", show(r.oracle)}});
        else
            std::printf("%-24s %-9s solver %-8s oracle %s\n", r.name.c_str(), r.status.c_str(), show(r.solver).c_str(),
                        show(r.oracle).c_str());
    }
    if (g.json)
        std::cout << json{{"rows", out}, {"agree", agree}, {"compared", compared}}.dump() << "\n";
    else
        std::printf("%d/%d agree\n", agree, compared);
    return agree == compared ? kOk : kFailure;
}

std::vector<int> parse_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

// Least-squares slope of log(time) against log(n).
double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 2) return 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [n, t] : pts) {
        double x = std::log(n), y = std::log(t);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    double k = static_cast<double>(pts.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

int cmd_bench(const Global& g, const std::string& sizes, const std::string& cs, int reps) {
    json table = json::array();
    if (!g.json) std::printf("%6s %3s %6s %12s\n", "n", "c", "m", "seconds");
    for (int c : parse_list(cs)) {
        std::vector<std::pair<double, double>> pts;
        for (int n : parse_list(sizes)) {
            GenParams p;
            p.n = n;
            p.c = c;
            p.density = std::min(1.0, 6.0 / n);
            p.max_tree_size = std::max(2, n / 5);
            p.seed = g.seed;
            Instance inst;
            try {
                inst = generate_instance(p);
            } catch (const ParamsInfeasible& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kInfeasibleParams;
            }
            auto t0 = std::chrono::steady_clock::now();
            for (int r = 0; r < std::max(1, reps); ++r) solve(inst);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
                          std::max(1, reps);
            pts.push_back({static_cast<double>(n), std::max(secs, 1e-9)});
            if (g.json)
                table.push_back({{"n", n}, {"c", c}, {"m", inst.m()}, {"seconds", secs}});
            else
                std::printf("%6d %3d %6d %12.6f\n", n, c, inst.m(), secs);
        }
        double slope = loglog_slope(pts);
        if (g.json)
            table.push_back({{"c", c}, {"loglog_slope", slope}});
        else if (!pts.empty())
            std::printf("c = %d: log-log slope %.2f\n", c, slope);
    }
    if (g.json) std::cout << table.dump() << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shortest two disjoint paths with conservative weights"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_option("--seed", g.seed, "Seed for generated instances");
    app.add_option("--threads", g.threads, "Worker threads for compare")->check(CLI::PositiveNumber);

    std::string file, dot, out, dir, sizes = "20,30,40", cs = "1";
    bool assert_invariants = false;
    GenParams gp;
    int count = 100, n_min = 5, n_max = 10, c_max = 3, reps = 3;
    double density = 0.4;

    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
    solve_cmd->add_option("file", file, "Instance JSON")->required();
    solve_cmd->add_option("--emit-dot", dot, "Write a DOT drawing of the solution");
    solve_cmd->add_flag("--assert-invariants", assert_invariants, "Check internal invariants while solving");

    auto* check_cmd = app.add_subcommand("check", "Check conservativeness");
    check_cmd->add_option("file", file, "Instance JSON")->required();

    auto* gen_cmd = app.add_subcommand("gen", "Generate a conservative instance");
    gen_cmd->add_option("--n", gp.n, "Vertices")->required();
    gen_cmd->add_option("--c", gp.c, "Negative trees")->required();
    gen_cmd->add_option("--density", gp.density, "Positive edge probability");
    gen_cmd->add_option("--wmax", gp.wmax, "Largest negative magnitude");
    gen_cmd->add_option("--max-tree-size", gp.max_tree_size, "Vertices per tree");
    gen_cmd->add_flag("--tight", gp.tight, "Positive weights down to 1");
    gen_cmd->add_option("--out", out, "Output file, default stdout");

    auto* cmp_cmd = app.add_subcommand("compare", "Compare the solver against brute force");
    cmp_cmd->add_option("--dir", dir, "Directory of instance files");
    cmp_cmd->add_option("--count", count, "Generated instances when no directory is given");
    cmp_cmd->add_option("--n-min", n_min, "Smallest generated n");
    cmp_cmd->add_option("--n-max", n_max, "Largest generated n");
    cmp_cmd->add_option("--c-max", c_max, "Largest generated c");
    cmp_cmd->add_option("--density", density, "Positive edge probability");

    auto* bench_cmd = app.add_subcommand("bench", "Time the solver over a size grid");
    bench_cmd->add_option("--sizes", sizes, "Comma-separated n values; empty for none")->expected(0, 1);
    bench_cmd->add_option("--cs", cs, "Comma-separated c values; empty for none")->expected(0, 1);
    bench_cmd->add_option("--reps", reps, "Repetitions per point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParse;
    }

    if (*solve_cmd) return cmd_solve(g, file, dot, assert_invariants);
    if (*check_cmd) return cmd_check(g, file);
    if (*gen_cmd) return cmd_gen(g, gp, out);
    if (*cmp_cmd) {
        if (n_min < 4 || n_max < n_min) {
            std::cerr << "error: need 4 <= n-min <= n-max\n";
            return kParse;
        }
        return cmd_compare(g, dir, count, n_min, n_max, c_max, density);
    }
    if (*bench_cmd) return cmd_bench(g, sizes, cs, reps);
    return kFailure;
}
