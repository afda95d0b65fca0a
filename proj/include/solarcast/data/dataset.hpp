#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "solarcast/data/series.hpp"

namespace solarcast::data {

// Pointwise sum of member series; missing markers propagate.
// All members must share the timestamp grid (same length here, since every
// series of a dataset lives on the dataset grid).
inline PowerSeries aggregate_series(const std::vector<const PowerSeries*>& members,
                                    SeriesId id) {
    if (members.empty())
        throw DataError("aggregate_series: no members");
    std::size_t len = members[0]->values.size();
    for (const PowerSeries* m : members)
        if (m->values.size() != len)
            throw DataError("aggregate_series: member " + m->id.str() +
                            " has mismatched grid (" +
                            std::to_string(m->values.size()) + " vs " +
                            std::to_string(len) + " steps)");
    PowerSeries out;
    out.id = std::move(id);
    out.values.assign(len, 0.0);
    for (const PowerSeries* m : members)
        for (std::size_t i = 0; i < len; ++i)
            out.values[i] += m->values[i]; // NaN + x == NaN
    return out;
}

inline PowerSeries aggregate_series(const std::vector<PowerSeries>& members,
                                    SeriesId id) {
    std::vector<const PowerSeries*> ptrs;
    ptrs.reserve(members.size());
    for (const auto& m : members)
        ptrs.push_back(&m);
    return aggregate_series(ptrs, std::move(id));
}

// All series of one region: postcode level, per-cluster weather, the
// cluster assignment, and the derived aggregates. Immutable once built.
struct RegionalDataset {
    TimeGrid grid;
    std::vector<PowerSeries> postcodes;
    std::vector<GeoPoint> postcode_coords;      // parallel to postcodes
    std::vector<WeatherSeries> weather;         // one per cluster
    std::vector<int> subregion_of;              // postcode index -> cluster
    PowerSeries regional;
    std::vector<PowerSeries> subregion_aggregates; // one per cluster

    int n_postcodes() const { return static_cast<int>(postcodes.size()); }
    int n_clusters() const { return static_cast<int>(weather.size()); }
    int n_days() const { return grid.n_days; }

    std::vector<int> cluster_members(int cluster) const {
        std::vector<int> out;
        for (int p = 0; p < n_postcodes(); ++p)
            if (subregion_of[p] == cluster)
                out.push_back(p);
        return out;
    }

    const PowerSeries& series(const SeriesId& id) const {
        switch (id.kind) {
        case SeriesKind::Regional:
            return regional;
        case SeriesKind::SubRegion:
            for (const auto& s : subregion_aggregates)
                if (s.id.key == id.key)
                    return s;
            break;
        case SeriesKind::Postcode:
            for (const auto& s : postcodes)
                if (s.id.key == id.key)
                    return s;
            break;
        }
        throw DataError("unknown series " + id.str());
    }

    int postcode_index(const std::string& key) const {
        for (int p = 0; p < n_postcodes(); ++p)
            if (postcodes[p].id.key == key)
                return p;
        throw DataError("unknown postcode '" + key + "'");
    }

    // Weather attached to a series: the postcode's cluster weather; aggregate
    // series carry none.
    const WeatherSeries* weather_for(const SeriesId& id) const {
        if (id.kind != SeriesKind::Postcode)
            return nullptr;
        return &weather[static_cast<std::size_t>(
            subregion_of[static_cast<std::size_t>(postcode_index(id.key))])];
    }
};

// Recomputes the aggregates and checks them against the stored series to a
// relative tolerance, along with the structural invariants. Steps listed in
// `exempt_steps` are skipped by the coherence check (ingestion fills missing
// readings by interpolation, which legitimately breaks exact coherence at
// those steps).
inline void validate_dataset(const RegionalDataset& ds, double rel_tol = 1e-9,
                             const std::vector<int>& exempt_steps = {}) {
    if (ds.postcodes.empty())
        throw DataError("dataset: no postcode series");
    if (ds.postcode_coords.size() != ds.postcodes.size())
        throw DataError("dataset: coordinate count mismatch");
    if (ds.subregion_of.size() != ds.postcodes.size())
        throw DataError("dataset: cluster assignment count mismatch");
    int steps = ds.grid.n_steps();
    for (const auto& s : ds.postcodes) {
        validate_power_series(s);
        if (static_cast<int>(s.values.size()) != steps)
            throw DataError("series " + s.id.str() + ": not on the dataset grid");
    }
    for (int a : ds.subregion_of)
        if (a < 0 || a >= ds.n_clusters())
            throw DataError("dataset: postcode mapped to unknown cluster " +
                            std::to_string(a));
    for (const auto& w : ds.weather) {
        validate_weather_series(w);
        if (w.n_steps() != steps)
            throw DataError("weather cluster " + std::to_string(w.location_id) +
                            ": not on the dataset grid");
    }
    std::vector<bool> exempt(static_cast<std::size_t>(steps), false);
    for (int s : exempt_steps)
        if (s >= 0 && s < steps)
            exempt[static_cast<std::size_t>(s)] = true;
    auto check_sum = [&](const PowerSeries& stored,
                         const std::vector<const PowerSeries*>& members) {
        PowerSeries sum = aggregate_series(members, stored.id);
        for (std::size_t i = 0; i < sum.values.size(); ++i) {
            if (exempt[i])
                continue;
            double a = stored.values[i];
            double b = sum.values[i];
            double scale = std::max({std::abs(a), std::abs(b), 1.0});
            if (std::abs(a - b) > rel_tol * scale)
                throw DataError("aggregation incoherence in " + stored.id.str() +
                                " at step " + std::to_string(i));
        }
    };
    std::vector<const PowerSeries*> all;
    for (const auto& p : ds.postcodes)
        all.push_back(&p);
    check_sum(ds.regional, all);
    if (static_cast<int>(ds.subregion_aggregates.size()) != ds.n_clusters())
        throw DataError("dataset: sub-region aggregate count mismatch");
    for (int c = 0; c < ds.n_clusters(); ++c) {
        std::vector<const PowerSeries*> members;
        for (int p : ds.cluster_members(c))
            members.push_back(&ds.postcodes[static_cast<std::size_t>(p)]);
        if (members.empty())
            throw DataError("dataset: cluster " + std::to_string(c) +
                            " has no postcodes");
        check_sum(ds.subregion_aggregates[static_cast<std::size_t>(c)], members);
    }
}

} // namespace solarcast::data
