#include "mscvrp/solution.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mscvrp {

namespace {
constexpr int kDepot = 0;
}

Solution Solution::from_routes(const Instance& inst, std::vector<std::vector<int>> routes) {
    Solution s;
    for (auto& r : routes) {
        if (r.empty()) continue;
        s.routes_.push_back(std::move(r));
    }
    s.rebuild_caches(inst);
    return s;
}

void Solution::append_route(std::vector<int> customers, long long load) {
    routes_.push_back(std::move(customers));
    loads_.push_back(load);
}

void Solution::remove_route(int r) {
    routes_.erase(routes_.begin() + r);
    loads_.erase(loads_.begin() + r);
}

void Solution::rebuild_caches(const Instance& inst) {
    loads_.assign(routes_.size(), 0);
    cost_ = 0;
    for (std::size_t k = 0; k < routes_.size(); ++k) {
        long long load = 0;
        for (int c : routes_[k]) load += inst.demand(c);
        loads_[k] = load;
        cost_ += route_cost(inst, routes_[k]);
    }
}

long long Solution::route_cost(const Instance& inst, const std::vector<int>& route) {
    if (route.empty()) return 0;
    long long cost = inst.distance(kDepot, route.front());
    for (std::size_t i = 0; i + 1 < route.size(); ++i) cost += inst.distance(route[i], route[i + 1]);
    cost += inst.distance(route.back(), kDepot);
    return cost;
}

long long Solution::recompute_cost(const Instance& inst, const std::vector<std::vector<int>>& routes) {
    long long total = 0;
    for (const auto& r : routes) total += route_cost(inst, r);
    return total;
}

FeasibilityReport Solution::check_feasible(const Instance& inst) const {
    const int n = inst.customer_count();
    std::vector<int> seen(n + 1, 0);
    for (std::size_t k = 0; k < routes_.size(); ++k) {
        if (routes_[k].empty()) return {false, "empty route " + std::to_string(k)};
        long long load = 0;
        for (int c : routes_[k]) {
            if (c < 1 || c > n) return {false, "unknown customer " + std::to_string(c)};
            if (++seen[c] > 1) return {false, "customer " + std::to_string(c) + " visited more than once"};
            load += inst.demand(c);
        }
        if (load > inst.capacity())
            return {false, "capacity exceeded on route " + std::to_string(k) + " (load " + std::to_string(load) +
                               " > " + std::to_string(inst.capacity()) + ")"};
    }
    for (int c = 1; c <= n; ++c)
        if (!seen[c]) return {false, "customer " + std::to_string(c) + " missing"};
    return {true, ""};
}

std::vector<std::vector<int>> Solution::canonical_routes() const {
    std::vector<std::vector<int>> canon = routes_;
    for (auto& r : canon) {
        if (r.size() > 1 && r.back() < r.front()) std::reverse(r.begin(), r.end());
    }
    std::sort(canon.begin(), canon.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
    return canon;
}

std::string Solution::canonical_key() const {
    std::string key;
    for (const auto& r : canonical_routes()) {
        for (int c : r) {
            key += std::to_string(c);
            key += ',';
        }
        key += '|';
    }
    return key;
}

std::string Solution::serialize_sol() const {
    std::ostringstream out;
    for (std::size_t k = 0; k < routes_.size(); ++k) {
        out << "Route #" << (k + 1) << ":";
        for (int c : routes_[k]) out << " " << c;
        out << "\n";
    }
    out << "Cost " << cost_ << "\n";
    return out.str();
}

Solution Solution::parse_sol(const std::string& text, const Instance& inst) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<int>> routes;
    while (std::getline(in, line)) {
        auto hash = line.find("Route #");
        if (hash != std::string::npos) {
            auto colon = line.find(':', hash);
            if (colon == std::string::npos) throw ParseError("malformed route line: " + line);
            std::istringstream fields(line.substr(colon + 1));
            std::vector<int> route;
            int c;
            while (fields >> c) route.push_back(c);
            routes.push_back(std::move(route));
        }
        // The trailing "Cost <int>" line is informational; the cost cache is
        // always recomputed from the parsed routes.
    }
    if (routes.empty()) throw ParseError("solution file contains no routes");
    return from_routes(inst, std::move(routes));
}

long long proximity(const Instance& inst, const Solution& a, const Solution& b) {
    const int n = inst.customer_count();
    // next/prev with the depot as sentinel at both route ends
    auto adjacency = [&](const Solution& s, std::vector<int>& next, std::vector<int>& prev) {
        next.assign(n + 1, -1);
        prev.assign(n + 1, -1);
        for (const auto& r : s.routes()) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                prev[r[i]] = i == 0 ? kDepot : r[i - 1];
                next[r[i]] = i + 1 == r.size() ? kDepot : r[i + 1];
            }
        }
        for (int c = 1; c <= n; ++c)
            if (next[c] == -1) throw ContractViolation("proximity requires solutions covering every customer");
    };
    std::vector<int> next_a, prev_a, next_b, prev_b;
    adjacency(a, next_a, prev_a);
    adjacency(b, next_b, prev_b);

    long long delta = 0;
    for (int c = 1; c <= n; ++c) {
        if (next_a[c] != next_b[c] && next_a[c] != prev_b[c]) ++delta;
        if (prev_a[c] == kDepot && prev_b[c] != kDepot && next_b[c] != kDepot) ++delta;
    }
    return delta;
}

double gap_percent(double obtained, double reference) {
    if (reference <= 0) throw ContractViolation("gap reference must be positive");
    return 100.0 * (obtained - reference) / reference;
}

long long giant_tour_cost(const Instance& inst, const std::vector<int>& order) {
    if (order.empty()) return 0;
    long long cost = inst.distance(kDepot, order.front());
    for (std::size_t i = 0; i + 1 < order.size(); ++i) cost += inst.distance(order[i], order[i + 1]);
    cost += inst.distance(order.back(), kDepot);
    return cost;
}

}  // namespace mscvrp
