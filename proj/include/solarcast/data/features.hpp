#pragma once

#include <optional>
#include <vector>

#include "solarcast/data/dataset.hpp"

namespace solarcast::data {

// The t x f input of one series for one forecast day. Row r covers in-day
// slot r; columns are the lagged power values oldest -> newest, followed by
// the 7 weather features of the forecast day when the series has weather
// attached.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    FeatureMatrix() = default;
    FeatureMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), values(r * c, 0.0) {}

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
};

inline FeatureMatrix build_feature_matrix(const PowerSeries& target,
                                          const WeatherSeries* weather,
                                          int day, int lag_days,
                                          int horizon = kSlotsPerDay) {
    if (horizon != kSlotsPerDay)
        throw ConfigError("build_feature_matrix: horizon must be " +
                          std::to_string(kSlotsPerDay));
    if (lag_days < 1)
        throw ConfigError("build_feature_matrix: lag_days must be >= 1");
    if (day < lag_days)
        throw DataError("build_feature_matrix: day " + std::to_string(day) +
                        " has fewer than " + std::to_string(lag_days) +
                        " days of history");
    if (day >= target.n_days())
        throw DataError("build_feature_matrix: day " + std::to_string(day) +
                        " beyond series end");
    std::size_t f = static_cast<std::size_t>(lag_days) +
                    (weather != nullptr ? kWeatherFeatures : 0);
    FeatureMatrix m(kSlotsPerDay, f);
    for (int r = 0; r < kSlotsPerDay; ++r) {
        for (int l = 0; l < lag_days; ++l)
            m.at(r, l) = target.at(day - lag_days + l, r);
        if (weather != nullptr)
            for (int w = 0; w < kWeatherFeatures; ++w)
                m.at(r, static_cast<std::size_t>(lag_days) + w) =
                    weather->at(day, r, w);
    }
    return m;
}

struct Sample {
    int day = 0;
    std::vector<FeatureMatrix> inputs;
    std::vector<double> target; // h values of the target series on `day`
};

struct SampleSet {
    SeriesId target;
    int lag_days = 0;
    std::vector<Sample> samples;
};

// Builds one sample per eligible day of [day_begin, day_end): inputs are the
// feature matrices of `inputs` (postcode series carry their cluster weather),
// plus the target's own matrix appended last when append_target_matrix is
// set (the aggregated-series input of the HTCNN sample layout).
inline SampleSet make_samples(const RegionalDataset& ds, const SeriesId& target,
                              const std::vector<SeriesId>& inputs, int lag_days,
                              int horizon, int day_begin, int day_end,
                              bool append_target_matrix = true) {
    if (horizon != kSlotsPerDay)
        throw ConfigError("make_samples: horizon must be " +
                          std::to_string(kSlotsPerDay));
    const PowerSeries& tgt = ds.series(target);
    int first = std::max(day_begin, lag_days);
    if (first >= day_end)
        throw DataError("make_samples: no eligible days in [" +
                        std::to_string(day_begin) + "," +
                        std::to_string(day_end) + ") with lag " +
                        std::to_string(lag_days));
    SampleSet set;
    set.target = target;
    set.lag_days = lag_days;
    for (int day = first; day < day_end; ++day) {
        Sample s;
        s.day = day;
        for (const SeriesId& id : inputs)
            s.inputs.push_back(build_feature_matrix(ds.series(id),
                                                    ds.weather_for(id), day,
                                                    lag_days, horizon));
        if (append_target_matrix)
            s.inputs.push_back(build_feature_matrix(
                tgt, ds.weather_for(target), day, lag_days, horizon));
        s.target.resize(kSlotsPerDay);
        for (int r = 0; r < kSlotsPerDay; ++r)
            s.target[static_cast<std::size_t>(r)] = tgt.at(day, r);
        set.samples.push_back(std::move(s));
    }
    return set;
}

// Whole-series convenience overload: one sample per day with full history.
inline SampleSet make_samples(const RegionalDataset& ds, const SeriesId& target,
                              const std::vector<SeriesId>& inputs, int lag_days,
                              int horizon = kSlotsPerDay,
                              bool append_target_matrix = true) {
    return make_samples(ds, target, inputs, lag_days, horizon, 0, ds.n_days(),
                        append_target_matrix);
}

} // namespace solarcast::data
