#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "solarcast/core/errors.hpp"

namespace solarcast::eval {

struct MannWhitneyResult {
    double u = 0.0;     // U statistic of the first sample
    double p = 1.0;     // two-sided p-value
    bool exact = false; // exact enumeration vs normal approximation
};

namespace detail {

// Midranks (1-based) of the pooled sorted values.
inline std::vector<double> midranks(std::vector<double> pooled) {
    std::sort(pooled.begin(), pooled.end());
    std::vector<double> ranks(pooled.size());
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j + 1 < pooled.size() && pooled[j + 1] == pooled[i])
            ++j;
        double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[k] = mid;
        i = j + 1;
    }
    return ranks;
}

inline double rank_of(std::span<const double> sorted_pooled,
                      const std::vector<double>& ranks, double value) {
    auto it = std::lower_bound(sorted_pooled.begin(), sorted_pooled.end(), value);
    return ranks[static_cast<std::size_t>(it - sorted_pooled.begin())];
}

} // namespace detail

// Two-sided Mann-Whitney U test with midrank tie handling. Uses exact
// enumeration over all C(n, n_a) group assignments of the pooled values when
// min(n_a, n_b) <= 8, and the normal approximation with tie correction and
// continuity correction otherwise. Two identical constant samples give
// p = 1.0.
inline MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                        std::span<const double> b) {
    if (a.empty() || b.empty())
        throw DataError("mann_whitney_u: both samples must be nonempty");
    std::size_t na = a.size(), nb = b.size(), n = na + nb;
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> ranks = detail::midranks(sorted);

    double ra = 0.0;
    for (double v : a)
        ra += detail::rank_of(sorted, ranks, v);
    double nm = static_cast<double>(na) * static_cast<double>(nb);
    double u_a = ra - static_cast<double>(na) * (static_cast<double>(na) + 1.0) / 2.0;

    MannWhitneyResult res;
    res.u = u_a;

    if (std::min(na, nb) <= 8) {
        // Exact path: walk every assignment of na pooled slots to sample A
        // and count arrangements at least as extreme as the observed one.
        res.exact = true;
        double obs = std::min(u_a, nm - u_a);
        std::vector<std::size_t> comb(na);
        for (std::size_t i = 0; i < na; ++i)
            comb[i] = i;
        auto next_comb = [&]() {
            for (std::size_t i = na; i-- > 0;) {
                if (comb[i] < n - na + i) {
                    ++comb[i];
                    for (std::size_t j = i + 1; j < na; ++j)
                        comb[j] = comb[j - 1] + 1;
                    return true;
                }
            }
            return false;
        };
        long total = 0, extreme = 0;
        const double half =
            static_cast<double>(na) * (static_cast<double>(na) + 1.0) / 2.0;
        do {
            double r = 0.0;
            for (std::size_t i : comb)
                r += ranks[i];
            double u = r - half;
            ++total;
            if (std::min(u, nm - u) <= obs + 1e-9)
                ++extreme;
        } while (next_comb());
        res.p = static_cast<double>(extreme) / static_cast<double>(total);
        return res;
    }

    // Normal approximation with tie correction.
    double tie_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && sorted[j + 1] == sorted[i])
            ++j;
        double t = static_cast<double>(j - i + 1);
        tie_sum += t * t * t - t;
        i = j + 1;
    }
    double dn = static_cast<double>(n);
    double var = nm / 12.0 * ((dn + 1.0) - tie_sum / (dn * (dn - 1.0)));
    if (var <= 0.0) {
        res.p = 1.0; // every pooled value identical
        return res;
    }
    double mu = nm / 2.0;
    double z = (std::abs(u_a - mu) - 0.5) / std::sqrt(var);
    if (z < 0.0)
        z = 0.0;
    res.p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return res;
}

} // namespace solarcast::eval
