#pragma once

#include <cmath>
#include <vector>

#include "solarcast/data/features.hpp"
#include "solarcast/data/split.hpp"

namespace solarcast::fc {

// Seasonal linear autoregression: for each in-day slot s, a ridge-regularised
// linear regression of y_d[s] on the same-slot values of the previous `lags`
// days (optionally plus the forecast day's 7 weather features). This is the
// documented classical stand-in used where an auto-tuned seasonal ARIMA
// family would otherwise sit; it is reported under its own name, never as
// ARIMA.
//
// The intercept is not penalised, so lambda -> infinity drives every slope to
// zero and the forecast to the per-slot training mean.
struct SeasonalLinearAr {
    int lags = 7;
    bool use_weather = false;
    double lambda = 1e-6;
    // per slot: [intercept, lag_1..lag_L (oldest..newest), weather...]
    std::vector<std::vector<double>> coef;

    bool trained() const { return !coef.empty(); }
};

namespace detail {

// Solves A x = b for symmetric positive definite A via Cholesky.
inline std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b,
                                     std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k)
                sum -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (sum <= 0.0)
                    throw NumericError(
                        "linear_ar: normal matrix not positive definite "
                        "(increase the ridge penalty)");
                a[i * n + i] = std::sqrt(sum);
            } else {
                a[i * n + j] = sum / a[j * n + j];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k)
            sum -= a[i * n + k] * b[k];
        b[i] = sum / a[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double sum = b[i];
        for (std::size_t k = i + 1; k < n; ++k)
            sum -= a[k * n + i] * b[k];
        b[i] = sum / a[i * n + i];
    }
    return b;
}

} // namespace detail

inline SeasonalLinearAr fit_seasonal_linear_ar(const data::PowerSeries& series,
                                               const data::WeatherSeries* weather,
                                               data::DayRange train, int lags,
                                               double lambda) {
    if (lags < 1)
        throw ConfigError("linear_ar: lags must be >= 1");
    if (!(lambda > 0.0))
        throw ConfigError("linear_ar: ridge penalty must be > 0");
    int first = std::max(train.begin, lags);
    if (first >= train.end)
        throw DataError("linear_ar: training range has fewer than lags+1 days");

    SeasonalLinearAr model;
    model.lags = lags;
    model.use_weather = weather != nullptr;
    model.lambda = lambda;
    std::size_t p = 1 + static_cast<std::size_t>(lags) +
                    (weather != nullptr ? data::kWeatherFeatures : 0);

    for (int slot = 0; slot < data::kSlotsPerDay; ++slot) {
        std::vector<double> ata(p * p, 0.0), atb(p, 0.0), row(p);
        for (int day = first; day < train.end; ++day) {
            row[0] = 1.0;
            for (int l = 0; l < lags; ++l)
                row[1 + static_cast<std::size_t>(l)] =
                    series.at(day - lags + l, slot);
            if (weather != nullptr)
                for (int f = 0; f < data::kWeatherFeatures; ++f)
                    row[1 + static_cast<std::size_t>(lags) + f] =
                        weather->at(day, slot, f);
            double y = series.at(day, slot);
            for (std::size_t i = 0; i < p; ++i) {
                atb[i] += row[i] * y;
                for (std::size_t j = 0; j < p; ++j)
                    ata[i * p + j] += row[i] * row[j];
            }
        }
        for (std::size_t i = 1; i < p; ++i) // intercept unpenalised
            ata[i * p + i] += lambda;
        model.coef.push_back(detail::solve_spd(std::move(ata), std::move(atb), p));
    }
    return model;
}

inline std::vector<double> linear_ar_forecast(const SeasonalLinearAr& model,
                                              const data::PowerSeries& series,
                                              const data::WeatherSeries* weather,
                                              int day) {
    if (!model.trained())
        throw UsageError("linear_ar: model not fitted");
    if (model.use_weather && weather == nullptr)
        throw UsageError("linear_ar: model expects weather features");
    if (day < model.lags)
        throw DataError("linear_ar: day " + std::to_string(day) +
                        " has insufficient history");
    std::vector<double> out(data::kSlotsPerDay);
    for (int slot = 0; slot < data::kSlotsPerDay; ++slot) {
        const auto& c = model.coef[static_cast<std::size_t>(slot)];
        double acc = c[0];
        for (int l = 0; l < model.lags; ++l)
            acc += c[1 + static_cast<std::size_t>(l)] *
                   series.at(day - model.lags + l, slot);
        if (model.use_weather)
            for (int f = 0; f < data::kWeatherFeatures; ++f)
                acc += c[1 + static_cast<std::size_t>(model.lags) + f] *
                       weather->at(day, slot, f);
        out[static_cast<std::size_t>(slot)] = acc;
    }
    return out;
}

} // namespace solarcast::fc
