#include "mscvrp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace mscvrp {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double median_of(std::span<const double> values) {
    if (values.empty()) throw ContractViolation("median of empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

WilcoxonResult wilcoxon_one_tailed_less(std::span<const double> a,
                                        std::span<const double> b,
                                        WilcoxonMode mode) {
    if (a.size() != b.size()) throw ContractViolation("paired samples must have equal length");

    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    const int n = static_cast<int>(diffs.size());
    if (n < 5) throw InsufficientDataError("need at least 5 nonzero pairs, have " + std::to_string(n));

    // Rank |d| ascending with average ranks for ties. Doubling keeps average
    // ranks integral, which the exact distribution needs.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return std::fabs(diffs[x]) < std::fabs(diffs[y]); });
    std::vector<long long> scaled_rank(n, 0);
    std::vector<long long> tie_sizes;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && std::fabs(diffs[order[j + 1]]) == std::fabs(diffs[order[i]])) ++j;
        const long long scaled = (i + 1) + (j + 1);  // twice the average rank
        for (int k = i; k <= j; ++k) scaled_rank[order[k]] = scaled;
        tie_sizes.push_back(j - i + 1);
        i = j + 1;
    }

    long long w_scaled = 0;  // twice the positive-rank sum
    for (int k = 0; k < n; ++k)
        if (diffs[k] > 0) w_scaled += scaled_rank[k];

    WilcoxonResult result;
    result.n_effective = n;
    result.statistic = static_cast<double>(w_scaled) / 2.0;

    const bool use_exact = mode == WilcoxonMode::kExact || (mode == WilcoxonMode::kAuto && n <= 25);
    if (use_exact) {
        // Distribution of the scaled positive-rank sum over all 2^n sign
        // assignments, lower tail inclusive.
        long long total = 0;
        for (int k = 0; k < n; ++k) total += scaled_rank[k];
        std::vector<std::uint64_t> counts(total + 1, 0);
        counts[0] = 1;
        for (int k = 0; k < n; ++k) {
            const long long r = scaled_rank[k];
            for (long long t = total; t >= r; --t) counts[t] += counts[t - r];
        }
        std::uint64_t below = 0;
        for (long long t = 0; t <= w_scaled; ++t) below += counts[t];
        result.p_value = static_cast<double>(below) / std::ldexp(1.0, n);
        result.exact = true;
    } else {
        const double nn = n;
        const double mean = nn * (nn + 1.0) / 4.0;
        double tie_term = 0;
        for (long long t : tie_sizes) tie_term += static_cast<double>(t) * t * t - t;
        const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
        const double w = static_cast<double>(w_scaled) / 2.0;
        const double z = (w + 0.5 - mean) / std::sqrt(var);
        result.p_value = normal_cdf(z);
        result.exact = false;
    }
    return result;
}

}  // namespace mscvrp
