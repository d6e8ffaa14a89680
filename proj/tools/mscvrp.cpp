#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mscvrp/bench.hpp"
#include "mscvrp/features.hpp"
#include "mscvrp/solver.hpp"

namespace fs = std::filesystem;
using namespace mscvrp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitMissingInput = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
}

nlohmann::json trace_to_json(const Trace& trace) {
    nlohmann::json j;
    j["improvements"] = nlohmann::json::array();
    for (const auto& e : trace.improvements) j["improvements"].push_back({{"iteration", e.iteration}, {"cost", e.cost}});
    j["restarts"] = nlohmann::json::array();
    for (const auto& e : trace.restarts)
        j["restarts"].push_back({{"iteration", e.iteration},
                                 {"counter", e.counter},
                                 {"threshold", e.threshold},
                                 {"weight", e.weight}});
    j["weight_timeline"] = nlohmann::json::array();
    for (const auto& e : trace.weight_timeline)
        j["weight_timeline"].push_back({{"iteration", e.iteration}, {"weight", e.weight}});
    j["pr_calls"] = trace.pr_calls;
    j["pr_offers"] = trace.pr_offers;
    return j;
}

int run_solve(const std::string& instance_path,
              double time_limit,
              std::uint64_t seed,
              bool guided,
              bool no_pr,
              const std::string& sol_out,
              const std::string& trace_out,
              const std::string& bks_path,
              std::optional<long long> iterations) {
    const Instance inst = Instance::from_file(instance_path);
    SolverConfig config;
    config.mode = guided ? SolverConfig::Mode::kGuided : SolverConfig::Mode::kPlain;
    config.enable_path_relinking = !no_pr;
    config.time_limit_s = time_limit;
    config.seed = seed;
    config.max_iterations = iterations;
    config.record_trace = !trace_out.empty();

    const RunResult result = solve(inst, config);

    std::cout << "instance " << inst.name() << "\n";
    std::cout << "mode " << (guided ? "guided" : "plain") << (no_pr ? "-nopr" : "") << "\n";
    std::cout << "seed " << seed << "\n";
    std::cout << "cost " << result.best_cost << "\n";
    if (!bks_path.empty()) {
        const BksTable bks = BksTable::from_file(bks_path);
        if (const auto reference = bks.lookup(inst.name())) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.2f", gap_percent(static_cast<double>(result.best_cost),
                                                                static_cast<double>(*reference)));
            std::cout << "gap " << buf << "\n";
        } else {
            std::cerr << "warning: no BKS entry for " << inst.name() << "\n";
        }
    }
    std::cout << "routes " << result.best.route_count() << "\n";
    std::cout << "iterations " << result.iterations << "\n";

    if (!sol_out.empty()) write_file(sol_out, result.best.serialize_sol());
    if (!trace_out.empty()) write_file(trace_out, trace_to_json(result.trace).dump(2) + "\n");
    return kExitOk;
}

int run_bench(const std::string& instances_dir,
              const std::string& bks_path,
              int runs,
              double time_limit,
              const std::string& modes_arg,
              const std::string& out_csv,
              const std::string& out_json,
              int jobs,
              std::optional<long long> iterations) {
    if (!fs::is_directory(instances_dir)) {
        std::cerr << "error: not a directory: " << instances_dir << "\n";
        return kExitMissingInput;
    }
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(instances_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".vrp") paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) {
        std::cerr << "error: no .vrp files in " << instances_dir << "\n";
        return kExitMissingInput;
    }

    const BksTable bks = BksTable::from_file(bks_path);
    std::vector<std::string> modes;
    std::stringstream ss(modes_arg);
    std::string mode;
    while (std::getline(ss, mode, ',')) modes.push_back(mode);
    for (const auto& m : modes) config_for_mode(m, time_limit);  // validate early

    const auto reports = run_suite(paths, bks, modes, runs, time_limit, jobs, &std::cerr, iterations);

    const std::string csv = report_csv(reports);
    if (out_csv.empty()) {
        std::cout << csv;
    } else {
        write_file(out_csv, csv);
    }
    if (!out_json.empty()) write_file(out_json, report_json(reports, time_limit, runs));

    for (const auto& report : reports) {
        if (report.rows.empty()) continue;
        std::printf("[%s] avg gap: min %.2f mean %.2f median %.2f max %.2f\n", report.mode.c_str(),
                    report.avg_gap_agg.min, report.avg_gap_agg.mean, report.avg_gap_agg.median,
                    report.avg_gap_agg.max);
        std::printf("[%s] best gap: min %.2f mean %.2f median %.2f max %.2f\n", report.mode.c_str(),
                    report.best_gap_agg.min, report.best_gap_agg.mean, report.best_gap_agg.median,
                    report.best_gap_agg.max);
    }
    return kExitOk;
}

int run_features(const std::string& instance_path,
                 const std::string& solution_path,
                 std::optional<int> label,
                 const std::string& out_path) {
    const Instance inst = Instance::from_file(instance_path);
    const Solution sol = Solution::parse_sol(read_file(solution_path), inst);
    const auto report = sol.check_feasible(inst);
    if (!report.feasible) throw ParseError("solution is infeasible: " + report.violation);
    const FeatureVector fv = extract_features(inst, sol, label);

    if (out_path.empty()) {
        std::cout << dataset_header() << "\n" << dataset_row(fv) << "\n";
        return kExitOk;
    }
    const bool fresh = !fs::exists(out_path) || fs::file_size(out_path) == 0;
    std::ofstream out(out_path, std::ios::app);
    if (!out) throw ParseError("cannot write file: " + out_path);
    if (fresh) out << dataset_header() << "\n";
    out << dataset_row(fv) << "\n";
    return kExitOk;
}

std::vector<ReportRow> load_rows(const std::string& path, const std::string& mode_filter) {
    auto rows = parse_report_csv(read_file(path));
    if (!mode_filter.empty()) {
        std::erase_if(rows, [&](const ReportRow& r) { return r.mode != mode_filter; });
        if (rows.empty()) throw ParseError("no rows with mode " + mode_filter + " in " + path);
        return rows;
    }
    std::set<std::string> modes;
    for (const auto& r : rows) modes.insert(r.mode);
    if (modes.size() > 1)
        throw ParseError(path + " mixes " + std::to_string(modes.size()) +
                         " modes; select one with --mode-a/--mode-b");
    return rows;
}

int run_compare(const std::string& path_a,
                const std::string& path_b,
                double alpha,
                const std::string& mode_a,
                const std::string& mode_b) {
    const auto rows_a = load_rows(path_a, mode_a);
    const auto rows_b = load_rows(path_b, mode_b);
    const CompareResult result = compare_avg_gaps(rows_a, rows_b, alpha);
    std::printf("pairs %d\n", result.pairs);
    std::printf("n_effective %d\n", result.test.n_effective);
    std::printf("statistic %.6g\n", result.test.statistic);
    std::printf("p_value %.6g (%s)\n", result.test.p_value, result.test.exact ? "exact" : "normal approximation");
    if (result.reject) {
        std::printf("reject H0 at alpha=%g: first report's average gaps are significantly smaller\n", alpha);
    } else {
        std::printf("fail to reject H0 at alpha=%g\n", alpha);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mscvrp: multiple-search CVRP solver and benchmark harness"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve a single instance");
    std::string instance_path, sol_out, trace_out, bks_path;
    double time_limit = 60.0;
    std::uint64_t seed = 0;
    bool guided = false, no_pr = false;
    long long iterations_arg = -1;
    solve_cmd->add_option("--instance", instance_path, "Instance file (.vrp)")->required();
    solve_cmd->add_option("--time-limit", time_limit, "Time budget in seconds");
    solve_cmd->add_option("--seed", seed, "Random seed");
    solve_cmd->add_flag("--guided", guided, "Use feature-guided diversity control");
    solve_cmd->add_flag("--no-pr", no_pr, "Disable the path-relinking phase");
    solve_cmd->add_option("--sol-out", sol_out, "Write the best solution to this file");
    solve_cmd->add_option("--trace", trace_out, "Write the run trace as JSON");
    solve_cmd->add_option("--bks", bks_path, "BKS table (CSV: instance,bks) for gap reporting");
    solve_cmd->add_option("--iterations", iterations_arg, "Stop after this many iterations (deterministic)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run the multi-run benchmark protocol");
    std::string instances_dir, bench_bks, modes = "plain,guided", out_csv, out_json;
    int runs = 5, jobs = 1;
    double bench_time_limit = 60.0;
    long long bench_iterations = -1;
    bench_cmd->add_option("--instances", instances_dir, "Directory of .vrp files")->required();
    bench_cmd->add_option("--bks", bench_bks, "BKS table (CSV: instance,bks)")->required();
    bench_cmd->add_option("--runs", runs, "Runs per instance (seeds 0..runs-1)");
    bench_cmd->add_option("--time-limit", bench_time_limit, "Time budget per run in seconds");
    bench_cmd->add_option("--modes", modes, "Comma-separated: plain,guided,plain-nopr,guided-nopr");
    bench_cmd->add_option("--out", out_csv, "Report CSV path (stdout when omitted)");
    bench_cmd->add_option("--json", out_json, "Full-precision JSON report path");
    bench_cmd->add_option("--jobs", jobs, "Concurrent solver cells");
    bench_cmd->add_option("--iterations", bench_iterations, "Iteration budget instead of wall clock");

    // features
    auto* features_cmd = app.add_subcommand("features", "Extract the feature row of a solution");
    std::string feat_instance, feat_solution, feat_out;
    int label_arg = -1;
    features_cmd->add_option("--instance", feat_instance, "Instance file (.vrp)")->required();
    features_cmd->add_option("--solution", feat_solution, "Solution file (.sol)")->required();
    features_cmd->add_option("--label", label_arg, "1 optimal, 0 near-optimal")->check(CLI::Range(0, 1));
    features_cmd->add_option("--out", feat_out, "CSV to append to (header added when new)");

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "Wilcoxon comparison of two report CSVs");
    std::string report_a, report_b, mode_a, mode_b;
    double alpha = 0.0125;
    compare_cmd->add_option("--a", report_a, "First report CSV")->required();
    compare_cmd->add_option("--b", report_b, "Second report CSV")->required();
    compare_cmd->add_option("--alpha", alpha, "Significance level");
    compare_cmd->add_option("--mode-a", mode_a, "Mode to select from the first report");
    compare_cmd->add_option("--mode-b", mode_b, "Mode to select from the second report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve_cmd->parsed())
            return run_solve(instance_path, time_limit, seed, guided, no_pr, sol_out, trace_out, bks_path,
                             iterations_arg >= 0 ? std::optional<long long>(iterations_arg) : std::nullopt);
        if (bench_cmd->parsed())
            return run_bench(instances_dir, bench_bks, runs, bench_time_limit, modes, out_csv, out_json, jobs,
                             bench_iterations >= 0 ? std::optional<long long>(bench_iterations) : std::nullopt);
        if (features_cmd->parsed())
            return run_features(feat_instance, feat_solution,
                                label_arg >= 0 ? std::optional<int>(label_arg) : std::nullopt, feat_out);
        if (compare_cmd->parsed()) return run_compare(report_a, report_b, alpha, mode_a, mode_b);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMissingInput;
    } catch (const InsufficientDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMissingInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
