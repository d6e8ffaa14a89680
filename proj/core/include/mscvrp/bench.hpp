#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mscvrp/solver.hpp"
#include "mscvrp/stats.hpp"

namespace mscvrp {

// instance -> best-known cost, loaded from a two-column CSV (instance,bks).
class BksTable {
public:
    static BksTable from_csv(const std::string& text);
    static BksTable from_file(const std::string& path);
    void set(const std::string& instance, long long bks) { entries_[instance] = bks; }
    std::optional<long long> lookup(const std::string& instance) const;
    bool empty() const { return entries_.empty(); }

private:
    std::map<std::string, long long> entries_;
};

// Solver mode names used throughout reports: plain, guided, plain-nopr,
// guided-nopr. Throws on anything else.
SolverConfig config_for_mode(const std::string& mode, double time_limit_s);

struct InstanceSummary {
    std::string instance;
    std::string mode;
    std::vector<long long> costs;  // per run, run order
    double avg_cost = 0;
    long long best_cost = 0;
    double avg_gap = 0;   // gap of the average cost vs BKS
    double best_gap = 0;  // gap of the best cost vs BKS
};

struct Aggregates {
    double min = 0, mean = 0, median = 0, max = 0;
};

struct BenchReport {
    std::string mode;
    std::vector<InstanceSummary> rows;  // sorted by instance name
    Aggregates avg_gap_agg;
    Aggregates best_gap_agg;
};

Aggregates aggregate(std::span<const double> values);

// Multi-run protocol: every (instance, mode, run) cell is one single-threaded
// solve seeded with the run counter minus one. Cells may execute concurrently
// up to `jobs`; results are ordered by (instance, mode, run) regardless.
// Instances lacking a BKS entry are skipped with a warning on `log`.
std::vector<BenchReport> run_suite(const std::vector<std::string>& instance_paths,
                                   const BksTable& bks,
                                   const std::vector<std::string>& modes,
                                   int runs,
                                   double time_limit_s,
                                   int jobs,
                                   std::ostream* log,
                                   std::optional<long long> max_iterations = std::nullopt);

// CSV with header instance,mode,avg_cost,best_cost,avg_gap,best_gap; gaps at
// two decimals.
std::string report_csv(std::span<const BenchReport> reports);
std::string report_json(std::span<const BenchReport> reports, double time_limit_s, int runs);

struct ReportRow {
    std::string instance;
    std::string mode;
    double avg_gap = 0;
    double best_gap = 0;
};
std::vector<ReportRow> parse_report_csv(const std::string& text);

struct CompareResult {
    WilcoxonResult test;
    int pairs = 0;
    double alpha = 0;
    bool reject = false;  // H0 rejected: first sample significantly smaller
};

// Pairs the two reports' per-instance average gaps over their common
// instances and runs the one-tailed comparison (H1: a < b).
CompareResult compare_avg_gaps(const std::vector<ReportRow>& a, const std::vector<ReportRow>& b, double alpha);

}  // namespace mscvrp
