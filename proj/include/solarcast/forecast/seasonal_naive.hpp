#pragma once

#include <vector>

#include "solarcast/data/dataset.hpp"

namespace solarcast::fc {

// Periodic persistence: the forecast for a day is the previous day's
// observed profile.
inline std::vector<double> seasonal_naive(const data::PowerSeries& series,
                                          int day) {
    if (day < 1)
        throw DataError("seasonal_naive: day " + std::to_string(day) +
                        " has no previous day");
    if (day >= series.n_days())
        throw DataError("seasonal_naive: day " + std::to_string(day) +
                        " beyond series end");
    std::vector<double> out(data::kSlotsPerDay);
    for (int s = 0; s < data::kSlotsPerDay; ++s)
        out[static_cast<std::size_t>(s)] = series.at(day - 1, s);
    return out;
}

} // namespace solarcast::fc
