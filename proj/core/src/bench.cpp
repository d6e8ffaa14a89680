#include "mscvrp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace mscvrp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(trim(field));
    return fields;
}

std::string format_gap(double gap) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", gap);
    return buf;
}

std::string format_cost(double cost) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", cost);
    return buf;
}

}  // namespace

BksTable BksTable::from_csv(const std::string& text) {
    BksTable table;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < 2) throw ParseError("BKS table line needs instance,bks: " + line);
        if (fields[0] == "instance") continue;  // header
        table.entries_[fields[0]] = std::stoll(fields[1]);
    }
    return table;
}

BksTable BksTable::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open BKS table: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_csv(buf.str());
}

std::optional<long long> BksTable::lookup(const std::string& instance) const {
    const auto it = entries_.find(instance);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

SolverConfig config_for_mode(const std::string& mode, double time_limit_s) {
    SolverConfig config;
    config.time_limit_s = time_limit_s;
    if (mode == "plain") {
        config.mode = SolverConfig::Mode::kPlain;
    } else if (mode == "guided") {
        config.mode = SolverConfig::Mode::kGuided;
    } else if (mode == "plain-nopr") {
        config.mode = SolverConfig::Mode::kPlain;
        config.enable_path_relinking = false;
    } else if (mode == "guided-nopr") {
        config.mode = SolverConfig::Mode::kGuided;
        config.enable_path_relinking = false;
    } else {
        throw ContractViolation("unknown mode: " + mode +
                                " (expected plain, guided, plain-nopr or guided-nopr)");
    }
    return config;
}

Aggregates aggregate(std::span<const double> values) {
    if (values.empty()) throw ContractViolation("aggregate of empty sample");
    Aggregates agg;
    agg.min = *std::min_element(values.begin(), values.end());
    agg.max = *std::max_element(values.begin(), values.end());
    double sum = 0;
    for (double v : values) sum += v;
    agg.mean = sum / static_cast<double>(values.size());
    agg.median = median_of(values);
    return agg;
}

std::vector<BenchReport> run_suite(const std::vector<std::string>& instance_paths,
                                   const BksTable& bks,
                                   const std::vector<std::string>& modes,
                                   int runs,
                                   double time_limit_s,
                                   int jobs,
                                   std::ostream* log,
                                   std::optional<long long> max_iterations) {
    struct Entry {
        std::string name;
        Instance instance;
        long long bks;
    };
    std::vector<Entry> entries;
    for (const auto& path : instance_paths) {
        Instance inst = Instance::from_file(path);
        const auto reference = bks.lookup(inst.name());
        if (!reference) {
            if (log) *log << "warning: no BKS entry for " << inst.name() << ", instance skipped\n";
            continue;
        }
        entries.push_back({inst.name(), std::move(inst), *reference});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.name < b.name; });

    struct Cell {
        int entry;
        int mode;
        int run;  // 1-based
    };
    std::vector<Cell> cells;
    for (int e = 0; e < static_cast<int>(entries.size()); ++e)
        for (int m = 0; m < static_cast<int>(modes.size()); ++m)
            for (int r = 1; r <= runs; ++r) cells.push_back({e, m, r});

    std::vector<long long> costs(cells.size(), 0);
    std::atomic<std::size_t> cursor{0};
    const int workers = std::max(1, jobs);
    auto work = [&] {
        while (true) {
            const std::size_t k = cursor.fetch_add(1);
            if (k >= cells.size()) return;
            const Cell& cell = cells[k];
            SolverConfig config = config_for_mode(modes[cell.mode], time_limit_s);
            config.seed = seed_for_run(cell.run);
            config.max_iterations = max_iterations;
            const RunResult run = solve(entries[cell.entry].instance, config);
            costs[k] = run.best_cost;
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::vector<BenchReport> reports;
    for (int m = 0; m < static_cast<int>(modes.size()); ++m) {
        BenchReport report;
        report.mode = modes[m];
        std::vector<double> avg_gaps, best_gaps;
        for (int e = 0; e < static_cast<int>(entries.size()); ++e) {
            InstanceSummary row;
            row.instance = entries[e].name;
            row.mode = modes[m];
            for (std::size_t k = 0; k < cells.size(); ++k)
                if (cells[k].entry == e && cells[k].mode == m) row.costs.push_back(costs[k]);
            double sum = 0;
            long long best = row.costs.front();
            for (long long c : row.costs) {
                sum += static_cast<double>(c);
                best = std::min(best, c);
            }
            row.avg_cost = sum / static_cast<double>(row.costs.size());
            row.best_cost = best;
            row.avg_gap = gap_percent(row.avg_cost, static_cast<double>(entries[e].bks));
            row.best_gap = gap_percent(static_cast<double>(best), static_cast<double>(entries[e].bks));
            avg_gaps.push_back(row.avg_gap);
            best_gaps.push_back(row.best_gap);
            report.rows.push_back(std::move(row));
        }
        if (!report.rows.empty()) {
            report.avg_gap_agg = aggregate(avg_gaps);
            report.best_gap_agg = aggregate(best_gaps);
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

std::string report_csv(std::span<const BenchReport> reports) {
    std::string csv = "instance,mode,avg_cost,best_cost,avg_gap,best_gap\n";
    for (const auto& report : reports)
        for (const auto& row : report.rows) {
            csv += row.instance + "," + row.mode + "," + format_cost(row.avg_cost) + "," +
                   std::to_string(row.best_cost) + "," + format_gap(row.avg_gap) + "," + format_gap(row.best_gap) +
                   "\n";
        }
    return csv;
}

std::string report_json(std::span<const BenchReport> reports, double time_limit_s, int runs) {
    nlohmann::json doc;
    doc["time_limit_s"] = time_limit_s;
    doc["runs"] = runs;
    doc["reports"] = nlohmann::json::array();
    for (const auto& report : reports) {
        nlohmann::json r;
        r["mode"] = report.mode;
        r["instances"] = nlohmann::json::array();
        for (const auto& row : report.rows) {
            nlohmann::json j;
            j["instance"] = row.instance;
            j["costs"] = row.costs;
            j["avg_cost"] = row.avg_cost;
            j["best_cost"] = row.best_cost;
            j["avg_gap"] = row.avg_gap;
            j["best_gap"] = row.best_gap;
            r["instances"].push_back(std::move(j));
        }
        r["aggregates"] = {
            {"avg_gap",
             {{"min", report.avg_gap_agg.min},
              {"mean", report.avg_gap_agg.mean},
              {"median", report.avg_gap_agg.median},
              {"max", report.avg_gap_agg.max}}},
            {"best_gap",
             {{"min", report.best_gap_agg.min},
              {"mean", report.best_gap_agg.mean},
              {"median", report.best_gap_agg.median},
              {"max", report.best_gap_agg.max}}},
        };
        doc["reports"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

std::vector<ReportRow> parse_report_csv(const std::string& text) {
    std::vector<ReportRow> rows;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (!header_seen) {
            header_seen = true;
            if (fields.size() >= 2 && fields[0] == "instance") continue;
        }
        if (fields.size() < 6) throw ParseError("report row needs 6 columns: " + line);
        ReportRow row;
        row.instance = fields[0];
        row.mode = fields[1];
        row.avg_gap = std::stod(fields[4]);
        row.best_gap = std::stod(fields[5]);
        rows.push_back(std::move(row));
    }
    return rows;
}

CompareResult compare_avg_gaps(const std::vector<ReportRow>& a, const std::vector<ReportRow>& b, double alpha) {
    std::map<std::string, double> gaps_b;
    for (const auto& row : b) gaps_b[row.instance] = row.avg_gap;
    std::vector<double> xs, ys;
    for (const auto& row : a) {
        const auto it = gaps_b.find(row.instance);
        if (it == gaps_b.end()) continue;
        xs.push_back(row.avg_gap);
        ys.push_back(it->second);
    }
    CompareResult result;
    result.pairs = static_cast<int>(xs.size());
    result.alpha = alpha;
    result.test = wilcoxon_one_tailed_less(xs, ys);
    result.reject = result.test.p_value <= alpha;
    return result;
}

}  // namespace mscvrp
