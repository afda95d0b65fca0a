#pragma once

#include <array>
#include <cmath>
#include <iostream>
#include <span>
#include <vector>

#include "solarcast/data/dataset.hpp"
#include "solarcast/data/split.hpp"

namespace solarcast::data {

// Per-series standardisation fitted on the training range only.
struct Scaler {
    double mean = 0.0;
    double std = 1.0;
    bool floored = false; // std hit the epsilon floor (zero-variance series)

    static constexpr double kStdFloor = 1e-8;

    double apply(double x) const { return (x - mean) / std; }
    double invert(double y) const { return y * std + mean; }
};

inline Scaler fit_scaler(std::span<const double> values) {
    if (values.empty())
        throw DataError("fit_scaler: empty training range");
    double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : values)
        var += (v - mean) * (v - mean);
    var /= n;
    Scaler s;
    s.mean = mean;
    s.std = std::sqrt(var);
    if (s.std < Scaler::kStdFloor) {
        s.std = Scaler::kStdFloor;
        s.floored = true;
        std::cerr << "warning: zero-variance series, scaler std floored at "
                  << Scaler::kStdFloor << "\n";
    }
    return s;
}

inline Scaler fit_scaler(const PowerSeries& series, DayRange train) {
    auto begin = static_cast<std::size_t>(train.begin) * kSlotsPerDay;
    auto end = static_cast<std::size_t>(train.end) * kSlotsPerDay;
    return fit_scaler(std::span<const double>(series.values).subspan(
        begin, end - begin));
}

// Scalers for every series and weather feature of a dataset, all fitted on
// the training day range.
struct DatasetScalers {
    DayRange train;
    std::vector<Scaler> postcode;                 // per postcode
    Scaler regional;
    std::vector<Scaler> subregion;                // per cluster
    std::vector<std::array<Scaler, kWeatherFeatures>> weather; // per cluster

    const Scaler& for_series(const RegionalDataset& ds, const SeriesId& id) const {
        switch (id.kind) {
        case SeriesKind::Regional:
            return regional;
        case SeriesKind::Postcode:
            return postcode[static_cast<std::size_t>(ds.postcode_index(id.key))];
        case SeriesKind::SubRegion:
            for (std::size_t c = 0; c < ds.subregion_aggregates.size(); ++c)
                if (ds.subregion_aggregates[c].id.key == id.key)
                    return subregion[c];
            break;
        }
        throw DataError("no scaler for series " + id.str());
    }
};

inline DatasetScalers fit_scalers(const RegionalDataset& ds, DayRange train) {
    if (train.empty())
        throw DataError("fit_scalers: empty training range");
    DatasetScalers s;
    s.train = train;
    for (const auto& p : ds.postcodes)
        s.postcode.push_back(fit_scaler(p, train));
    s.regional = fit_scaler(ds.regional, train);
    for (const auto& a : ds.subregion_aggregates)
        s.subregion.push_back(fit_scaler(a, train));
    auto begin = static_cast<std::size_t>(train.begin) * kSlotsPerDay;
    auto end = static_cast<std::size_t>(train.end) * kSlotsPerDay;
    for (const auto& w : ds.weather) {
        std::array<Scaler, kWeatherFeatures> per;
        std::vector<double> col(end - begin);
        for (int f = 0; f < kWeatherFeatures; ++f) {
            for (std::size_t i = begin; i < end; ++i)
                col[i - begin] = w.at(static_cast<int>(i), f);
            per[static_cast<std::size_t>(f)] = fit_scaler(col);
        }
        s.weather.push_back(per);
    }
    return s;
}

// A copy of the dataset with every power series and weather feature
// standardised. The scaled copy intentionally breaks aggregation coherence
// (each series is scaled independently), so it skips validate_dataset and is
// only consumed by sample construction.
inline RegionalDataset apply_scalers(const RegionalDataset& ds,
                                     const DatasetScalers& sc) {
    RegionalDataset out = ds;
    for (std::size_t p = 0; p < out.postcodes.size(); ++p)
        for (auto& v : out.postcodes[p].values)
            v = sc.postcode[p].apply(v);
    for (auto& v : out.regional.values)
        v = sc.regional.apply(v);
    for (std::size_t c = 0; c < out.subregion_aggregates.size(); ++c)
        for (auto& v : out.subregion_aggregates[c].values)
            v = sc.subregion[c].apply(v);
    for (std::size_t c = 0; c < out.weather.size(); ++c)
        for (int i = 0; i < out.weather[c].n_steps(); ++i)
            for (int f = 0; f < kWeatherFeatures; ++f)
                out.weather[c].at(i, f) = sc.weather[c][static_cast<std::size_t>(f)]
                                              .apply(out.weather[c].at(i, f));
    return out;
}

} // namespace solarcast::data
