#include "mscvrp/instance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace mscvrp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// "KEY : value" or "KEY: value"; returns false for section markers/data lines.
bool split_keyword(const std::string& line, std::string& key, std::string& value) {
    auto colon = line.find(':');
    if (colon == std::string::npos) return false;
    key = trim(line.substr(0, colon));
    value = trim(line.substr(colon + 1));
    return !key.empty();
}

std::string format_number(double v) {
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

Instance Instance::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;

    std::string name = "unnamed";
    long long dimension = -1;
    long long capacity = -1;
    std::string edge_weight_type;
    bool saw_name = false, saw_dimension = false, saw_capacity = false, saw_edge_type = false;
    bool saw_coords = false, saw_demands = false, saw_depot = false;

    std::vector<int> coord_ids;
    std::vector<double> xs, ys;
    std::vector<int> demand_ids;
    std::vector<long long> demands;
    long long depot_file_id = -1;

    enum class Section { kNone, kCoords, kDemands, kDepot };
    Section section = Section::kNone;

    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line == "EOF") break;

        std::string key, value;
        if (split_keyword(line, key, value)) {
            section = Section::kNone;
            if (key == "NAME") {
                name = value;
                saw_name = true;
            } else if (key == "DIMENSION") {
                dimension = std::stoll(value);
                saw_dimension = true;
            } else if (key == "CAPACITY") {
                capacity = std::stoll(value);
                saw_capacity = true;
            } else if (key == "EDGE_WEIGHT_TYPE") {
                edge_weight_type = value;
                saw_edge_type = true;
            }
            // TYPE, COMMENT and other keywords carry no data we need.
            continue;
        }

        if (line == "NODE_COORD_SECTION") {
            section = Section::kCoords;
            saw_coords = true;
            continue;
        }
        if (line == "DEMAND_SECTION") {
            section = Section::kDemands;
            saw_demands = true;
            continue;
        }
        if (line == "DEPOT_SECTION") {
            section = Section::kDepot;
            saw_depot = true;
            continue;
        }

        std::istringstream fields(line);
        switch (section) {
            case Section::kCoords: {
                int id;
                double x, y;
                if (!(fields >> id >> x >> y)) throw ParseError("malformed line in NODE_COORD_SECTION: " + line);
                coord_ids.push_back(id);
                xs.push_back(x);
                ys.push_back(y);
                break;
            }
            case Section::kDemands: {
                int id;
                long long q;
                if (!(fields >> id >> q)) throw ParseError("malformed line in DEMAND_SECTION: " + line);
                demand_ids.push_back(id);
                demands.push_back(q);
                break;
            }
            case Section::kDepot: {
                long long id;
                if (!(fields >> id)) throw ParseError("malformed line in DEPOT_SECTION: " + line);
                if (id != -1) {
                    if (depot_file_id != -1) throw ParseError("DEPOT_SECTION lists more than one depot");
                    depot_file_id = id;
                }
                break;
            }
            case Section::kNone:
                throw ParseError("unexpected line outside any section: " + line);
        }
    }

    if (!saw_name) throw ParseError("missing NAME");
    if (!saw_dimension) throw ParseError("missing DIMENSION");
    if (!saw_edge_type) throw ParseError("missing EDGE_WEIGHT_TYPE");
    if (!saw_capacity) throw ParseError("missing CAPACITY");
    if (!saw_coords) throw ParseError("missing NODE_COORD_SECTION");
    if (!saw_demands) throw ParseError("missing DEMAND_SECTION");
    if (!saw_depot) throw ParseError("missing DEPOT_SECTION");
    if (edge_weight_type != "EUC_2D")
        throw UnsupportedFormatError("EDGE_WEIGHT_TYPE " + edge_weight_type + " not supported (expected EUC_2D)");
    if (dimension < 2) throw ParseError("DIMENSION must be at least 2");
    if (capacity <= 0) throw ParseError("CAPACITY must be positive");
    if (static_cast<long long>(xs.size()) != dimension)
        throw ParseError("NODE_COORD_SECTION has " + std::to_string(xs.size()) + " records, DIMENSION is " +
                         std::to_string(dimension));
    if (static_cast<long long>(demands.size()) != dimension)
        throw ParseError("DEMAND_SECTION has " + std::to_string(demands.size()) + " records, DIMENSION is " +
                         std::to_string(dimension));
    if (depot_file_id == -1) throw ParseError("DEPOT_SECTION does not name a depot");

    // Index records by file id, then remap so the depot becomes node 0 and
    // customers keep file order as 1..N.
    std::vector<long long> demand_by_id(dimension + 1, -1);
    for (std::size_t k = 0; k < demands.size(); ++k) {
        int id = demand_ids[k];
        if (id < 1 || id > dimension) throw ParseError("DEMAND_SECTION id out of range: " + std::to_string(id));
        demand_by_id[id] = demands[k];
    }
    std::vector<double> x_by_id(dimension + 1), y_by_id(dimension + 1);
    std::vector<char> seen(dimension + 1, 0);
    for (std::size_t k = 0; k < xs.size(); ++k) {
        int id = coord_ids[k];
        if (id < 1 || id > dimension) throw ParseError("NODE_COORD_SECTION id out of range: " + std::to_string(id));
        if (seen[id]) throw ParseError("duplicate node id in NODE_COORD_SECTION: " + std::to_string(id));
        seen[id] = 1;
        x_by_id[id] = xs[k];
        y_by_id[id] = ys[k];
    }
    for (int id = 1; id <= dimension; ++id) {
        if (!seen[id]) throw ParseError("NODE_COORD_SECTION misses node id " + std::to_string(id));
        if (demand_by_id[id] < 0) throw ParseError("DEMAND_SECTION misses node id " + std::to_string(id));
    }
    if (depot_file_id < 1 || depot_file_id > dimension)
        throw ParseError("DEPOT_SECTION id out of range: " + std::to_string(depot_file_id));
    if (demand_by_id[depot_file_id] != 0) throw ParseError("depot demand must be zero");

    Instance inst;
    inst.name_ = name;
    inst.capacity_ = capacity;
    inst.xs_.reserve(dimension);
    inst.ys_.reserve(dimension);
    inst.demands_.reserve(dimension);
    inst.file_ids_.reserve(dimension);
    inst.xs_.push_back(x_by_id[depot_file_id]);
    inst.ys_.push_back(y_by_id[depot_file_id]);
    inst.demands_.push_back(0);
    inst.file_ids_.push_back(static_cast<int>(depot_file_id));
    for (int id = 1; id <= dimension; ++id) {
        if (id == depot_file_id) continue;
        if (demand_by_id[id] > capacity)
            throw InfeasibleInstanceError("customer " + std::to_string(id) + " demand " +
                                          std::to_string(demand_by_id[id]) + " exceeds capacity " +
                                          std::to_string(capacity));
        inst.xs_.push_back(x_by_id[id]);
        inst.ys_.push_back(y_by_id[id]);
        inst.demands_.push_back(demand_by_id[id]);
        inst.file_ids_.push_back(id);
    }
    inst.finalize();
    return inst;
}

Instance Instance::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

Instance Instance::create(std::string name,
                          std::vector<double> xs,
                          std::vector<double> ys,
                          std::vector<long long> demands,
                          long long capacity) {
    if (xs.size() != ys.size() || xs.size() != demands.size())
        throw ContractViolation("coordinate and demand arrays must have equal length");
    if (xs.size() < 2) throw ContractViolation("instance needs a depot and at least one customer");
    if (capacity <= 0) throw ContractViolation("capacity must be positive");
    if (demands[0] != 0) throw ContractViolation("depot demand must be zero");
    for (std::size_t i = 1; i < demands.size(); ++i) {
        if (demands[i] < 0) throw ContractViolation("demands must be nonnegative");
        if (demands[i] > capacity)
            throw InfeasibleInstanceError("customer demand exceeds capacity in instance " + name);
    }
    Instance inst;
    inst.name_ = std::move(name);
    inst.xs_ = std::move(xs);
    inst.ys_ = std::move(ys);
    inst.demands_ = std::move(demands);
    inst.capacity_ = capacity;
    inst.file_ids_.resize(inst.xs_.size());
    std::iota(inst.file_ids_.begin(), inst.file_ids_.end(), 1);
    inst.finalize();
    return inst;
}

long long Instance::rounded_distance(int i, int j) const {
    const double dx = xs_[i] - xs_[j];
    const double dy = ys_[i] - ys_[j];
    return std::llround(std::sqrt(dx * dx + dy * dy));
}

double Instance::exact_distance(int i, int j) const {
    const double dx = xs_[i] - xs_[j];
    const double dy = ys_[i] - ys_[j];
    return std::sqrt(dx * dx + dy * dy);
}

void Instance::finalize() {
    demand_sum_ = std::accumulate(demands_.begin(), demands_.end(), 0LL);
    const int v = dimension();

    // Full matrix up to a few thousand nodes, on-the-fly beyond that.
    if (v <= 5000) {
        matrix_width_ = static_cast<std::size_t>(v);
        matrix_.resize(matrix_width_ * matrix_width_);
        for (int i = 0; i < v; ++i)
            for (int j = 0; j < v; ++j) matrix_[static_cast<std::size_t>(i) * v + j] = rounded_distance(i, j);
    }

    neighbors_.resize(v);
    ranks_.assign(static_cast<std::size_t>(v) * v, 0);
    std::vector<int> order;
    for (int i = 0; i < v; ++i) {
        order.clear();
        for (int c = 1; c < v; ++c)
            if (c != i) order.push_back(c);
        // Sorted by the exact metric so rankings are scale-invariant; rounding
        // is monotone, so the list is also non-decreasing in the solver metric.
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double da = exact_distance(i, a), db = exact_distance(i, b);
            return da != db ? da < db : a < b;
        });
        neighbors_[i] = order;
        for (std::size_t r = 0; r < order.size(); ++r)
            ranks_[static_cast<std::size_t>(i) * v + order[r]] = static_cast<int>(r) + 1;
    }
}

double Instance::estimated_route_size() const {
    if (demand_sum_ == 0) throw InfeasibleInstanceError("all demands are zero; route size estimate undefined");
    const double mean_demand = static_cast<double>(demand_sum_) / static_cast<double>(dimension());
    return static_cast<double>(capacity_) / mean_demand;
}

RouteSizeClass Instance::route_size_class() const {
    return estimated_route_size() > 20.0 ? RouteSizeClass::kLong : RouteSizeClass::kShort;
}

std::string Instance::serialize() const {
    std::ostringstream out;
    out << "NAME : " << name_ << "\n";
    out << "TYPE : CVRP\n";
    out << "DIMENSION : " << dimension() << "\n";
    out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
    out << "CAPACITY : " << capacity_ << "\n";
    out << "NODE_COORD_SECTION\n";
    for (int i = 0; i < dimension(); ++i)
        out << (i + 1) << " " << format_number(xs_[i]) << " " << format_number(ys_[i]) << "\n";
    out << "DEMAND_SECTION\n";
    for (int i = 0; i < dimension(); ++i) out << (i + 1) << " " << demands_[i] << "\n";
    out << "DEPOT_SECTION\n1\n-1\nEOF\n";
    return out.str();
}

}  // namespace mscvrp
