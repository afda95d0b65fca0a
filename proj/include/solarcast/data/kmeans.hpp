#pragma once

#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "solarcast/core/rng.hpp"
#include "solarcast/data/series.hpp"

namespace solarcast::data {

struct KMeansResult {
    std::vector<int> assignments;       // point -> cluster
    std::vector<GeoPoint> centroids;
    std::vector<double> objective_history; // within-cluster SSE per iteration
    int iterations = 0;
};

namespace detail {
inline double sq_dist(const GeoPoint& a, const GeoPoint& b) {
    double dl = a.lat - b.lat;
    double dg = a.lon - b.lon;
    return dl * dl + dg * dg;
}
} // namespace detail

// Lloyd's K-means with k-means++ seeding on raw (lat, lon) degrees.
// Deterministic for a fixed seed; stops when assignments stabilise or after
// 300 iterations. Ties go to the lowest cluster index; an emptied cluster is
// reseeded at the point farthest from its centroid.
inline KMeansResult assign_subregions(const std::vector<GeoPoint>& coords,
                                      int k, std::uint64_t seed,
                                      int max_iterations = 300) {
    int n = static_cast<int>(coords.size());
    if (k < 1)
        throw ConfigError("kmeans: k must be >= 1");
    std::set<std::pair<double, double>> distinct;
    for (const auto& c : coords)
        distinct.insert({c.lat, c.lon});
    if (k > static_cast<int>(distinct.size()))
        throw ConfigError("kmeans: k (" + std::to_string(k) +
                          ") exceeds the number of distinct coordinates (" +
                          std::to_string(distinct.size()) + ")");

    Rng rng(seed);
    KMeansResult res;
    res.centroids.reserve(static_cast<std::size_t>(k));

    // k-means++ seeding
    res.centroids.push_back(coords[rng.index(static_cast<std::size_t>(n))]);
    std::vector<double> d2(static_cast<std::size_t>(n));
    while (static_cast<int>(res.centroids.size()) < k) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            for (const auto& c : res.centroids)
                best = std::min(best, detail::sq_dist(coords[static_cast<std::size_t>(i)], c));
            d2[static_cast<std::size_t>(i)] = best;
            total += best;
        }
        if (total <= 0.0) {
            // all mass on existing centroids; take the first unused distinct point
            for (int i = 0; i < n; ++i)
                if (d2[static_cast<std::size_t>(i)] > 0.0) {
                    res.centroids.push_back(coords[static_cast<std::size_t>(i)]);
                    break;
                }
            // distinct-count precondition guarantees progress above
            continue;
        }
        double r = rng.uniform() * total;
        double acc = 0.0;
        int chosen = n - 1;
        for (int i = 0; i < n; ++i) {
            acc += d2[static_cast<std::size_t>(i)];
            if (acc >= r) {
                chosen = i;
                break;
            }
        }
        res.centroids.push_back(coords[static_cast<std::size_t>(chosen)]);
    }

    res.assignments.assign(static_cast<std::size_t>(n), -1);
    for (int iter = 0; iter < max_iterations; ++iter) {
        bool changed = false;
        double sse = 0.0;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double bd = std::numeric_limits<double>::max();
            for (int c = 0; c < k; ++c) {
                double d = detail::sq_dist(coords[static_cast<std::size_t>(i)],
                                           res.centroids[static_cast<std::size_t>(c)]);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            sse += bd;
            if (res.assignments[static_cast<std::size_t>(i)] != best) {
                res.assignments[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }
        res.objective_history.push_back(sse);
        res.iterations = iter + 1;
        if (!changed)
            break;
        for (int c = 0; c < k; ++c) {
            double lat = 0.0, lon = 0.0;
            int count = 0;
            for (int i = 0; i < n; ++i)
                if (res.assignments[static_cast<std::size_t>(i)] == c) {
                    lat += coords[static_cast<std::size_t>(i)].lat;
                    lon += coords[static_cast<std::size_t>(i)].lon;
                    ++count;
                }
            if (count > 0) {
                res.centroids[static_cast<std::size_t>(c)] = {lat / count, lon / count};
            } else {
                int far = 0;
                double fd = -1.0;
                for (int i = 0; i < n; ++i) {
                    double d = detail::sq_dist(
                        coords[static_cast<std::size_t>(i)],
                        res.centroids[static_cast<std::size_t>(c)]);
                    if (d > fd) {
                        fd = d;
                        far = i;
                    }
                }
                res.centroids[static_cast<std::size_t>(c)] = coords[static_cast<std::size_t>(far)];
            }
        }
    }
    return res;
}

} // namespace solarcast::data
