#include "sectortag/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace sectortag {

WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs) {
    std::vector<double> abs_d;
    std::vector<bool> positive;
    for (double d : diffs) {
        if (d == 0.0) continue;
        abs_d.push_back(std::abs(d));
        positive.push_back(d > 0.0);
    }

    WilcoxonResult out;
    out.n_nonzero = abs_d.size();
    if (abs_d.empty()) {
        out.exact = true;
        return out;
    }
    size_t n = abs_d.size();

    // doubled mid-ranks stay integral, which keeps the enumeration exact
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return abs_d[a] < abs_d[b]; });

    std::vector<int64_t> rank2(n, 0);
    std::vector<size_t> tie_sizes;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j < n && abs_d[order[j]] == abs_d[order[i]]) ++j;
        int64_t doubled = static_cast<int64_t>(i + 1 + j); // (first + last) of 1-based ranks
        for (size_t t = i; t < j; ++t) rank2[order[t]] = doubled;
        tie_sizes.push_back(j - i);
        i = j;
    }

    int64_t total2 = 0, w2_plus = 0;
    for (size_t t = 0; t < n; ++t) {
        total2 += rank2[t];
        if (positive[t]) w2_plus += rank2[t];
    }
    int64_t w2 = std::min(w2_plus, total2 - w2_plus);
    out.statistic = static_cast<double>(w2) / 2.0;

    if (n <= 12) {
        out.exact = true;
        uint64_t count = 0;
        uint64_t masks = uint64_t{1} << n;
        for (uint64_t mask = 0; mask < masks; ++mask) {
            int64_t w = 0;
            uint64_t m = mask;
            while (m) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(m));
                w += rank2[bit];
                m &= m - 1;
            }
            if (w <= w2) ++count;
        }
        out.p_value = std::min(1.0, 2.0 * static_cast<double>(count) /
                                        static_cast<double>(masks));
        return out;
    }

    double dn = static_cast<double>(n);
    double mean = dn * (dn + 1.0) / 4.0;
    double var = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0;
    for (size_t t : tie_sizes) {
        double dt = static_cast<double>(t);
        var -= (dt * dt * dt - dt) / 48.0;
    }
    if (var <= 0.0) {
        out.p_value = 1.0;
        return out;
    }
    double w = out.statistic;
    double z = (w - mean + 0.5) / std::sqrt(var); // continuity correction toward the mean
    double phi = 0.5 * std::erfc(-z / std::sqrt(2.0));
    out.p_value = std::min(1.0, 2.0 * phi);
    return out;
}

} // namespace sectortag
