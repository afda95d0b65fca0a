#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "solarcast/core/errors.hpp"

namespace solarcast::eval {

// Per-day normalised RMSE: RMSE over the day's slots divided by the day's
// mean actual generation. Undefined (NaN) when the mean actual is not
// positive; callers exclude and count such days.
inline double nrmse(std::span<const double> actual,
                    std::span<const double> forecast) {
    if (actual.size() != forecast.size() || actual.empty())
        throw DataError("nrmse: length mismatch");
    double n = static_cast<double>(actual.size());
    double sq = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        double d = forecast[i] - actual[i];
        sq += d * d;
        mean += actual[i];
    }
    mean /= n;
    if (!(mean > 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(sq / n) / mean;
}

// Forecast skill score vs the seasonal-naive reference, in percent:
//   SS = (1 - nrmse_method / nrmse_sn) * 100
inline double skill_score(double nrmse_method, double nrmse_sn) {
    if (!(nrmse_sn > 0.0))
        throw DataError("skill_score: reference nRMSE must be > 0");
    return (1.0 - nrmse_method / nrmse_sn) * 100.0;
}

// nRMSE reduction percentage of `proposed` relative to `baseline`:
//   (baseline - proposed) / baseline * 100
inline double error_reduction_pct(double nrmse_baseline, double nrmse_proposed) {
    if (!(nrmse_baseline > 0.0))
        throw DataError("error_reduction_pct: baseline nRMSE must be > 0");
    return (nrmse_baseline - nrmse_proposed) / nrmse_baseline * 100.0;
}

} // namespace solarcast::eval
