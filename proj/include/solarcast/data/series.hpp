#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "solarcast/core/errors.hpp"

namespace solarcast::data {

// Only daylight hours are stored: 18 hourly slots per day, 05:00-22:00.
constexpr int kSlotsPerDay = 18;
constexpr int kFirstHour = 5;

// The seven exogenous weather features, in fixed column order.
constexpr int kWeatherFeatures = 7;
inline const char* const kWeatherFeatureNames[kWeatherFeatures] = {
    "wind_speed", "temperature", "uv_index", "cloud_cover",
    "humidity",   "pressure",    "dew_point"};
enum WeatherFeature {
    kWindSpeed = 0,
    kTemperature = 1,
    kUvIndex = 2,
    kCloudCover = 3,
    kHumidity = 4,
    kPressure = 5,
    kDewPoint = 6,
};

// Proleptic Gregorian date; the arithmetic is Howard Hinnant's civil
// calendar algorithm.
struct Date {
    int year = 2020;
    int month = 1;
    int day = 1;

    static long days_from_civil(int y, int m, int d) {
        y -= m <= 2;
        long era = (y >= 0 ? y : y - 399) / 400;
        unsigned yoe = static_cast<unsigned>(y - era * 400);
        unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
        unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
        return era * 146097 + static_cast<long>(doe) - 719468;
    }

    static Date civil_from_days(long z) {
        z += 719468;
        long era = (z >= 0 ? z : z - 146096) / 146097;
        unsigned doe = static_cast<unsigned>(z - era * 146097);
        unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
        long y = static_cast<long>(yoe) + era * 400;
        unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
        unsigned mp = (5 * doy + 2) / 153;
        unsigned d = doy - (153 * mp + 2) / 5 + 1;
        unsigned m = mp + (mp < 10 ? 3 : -9);
        return {static_cast<int>(y + (m <= 2)), static_cast<int>(m),
                static_cast<int>(d)};
    }

    long serial() const { return days_from_civil(year, month, day); }

    Date plus_days(long n) const { return civil_from_days(serial() + n); }

    bool operator==(const Date&) const = default;
};

// The shared hourly timeline of one dataset: n_days days, each holding the
// 18 in-day slots.
struct TimeGrid {
    Date start{2020, 1, 1};
    int n_days = 0;

    int n_steps() const { return n_days * kSlotsPerDay; }

    std::string timestamp(int day, int slot) const {
        Date d = start.plus_days(day);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00:00", d.year,
                      d.month, d.day, kFirstHour + slot);
        return buf;
    }

    bool operator==(const TimeGrid&) const = default;
};

enum class SeriesKind { Postcode, SubRegion, Regional };

inline std::string_view to_string(SeriesKind k) {
    switch (k) {
    case SeriesKind::Postcode:
        return "postcode";
    case SeriesKind::SubRegion:
        return "subregion";
    case SeriesKind::Regional:
        return "regional";
    }
    return "?";
}

struct SeriesId {
    SeriesKind kind = SeriesKind::Postcode;
    std::string key;

    bool operator==(const SeriesId&) const = default;

    std::string str() const {
        return std::string(to_string(kind)) + ":" + key;
    }
};

// One power generation series on the dataset grid. Values are kW,
// nonnegative; NaN is the explicit missing marker (present only transiently
// during ingestion).
struct PowerSeries {
    SeriesId id;
    std::vector<double> values;

    int n_days() const { return static_cast<int>(values.size()) / kSlotsPerDay; }

    double at(int day, int slot) const {
        return values[static_cast<std::size_t>(day) * kSlotsPerDay + slot];
    }
    double& at(int day, int slot) {
        return values[static_cast<std::size_t>(day) * kSlotsPerDay + slot];
    }
};

inline void validate_power_series(const PowerSeries& s) {
    if (s.values.size() % kSlotsPerDay != 0)
        throw DataError("series " + s.id.str() + ": length " +
                        std::to_string(s.values.size()) +
                        " not divisible by " + std::to_string(kSlotsPerDay));
    for (double v : s.values)
        if (!std::isnan(v) && v < 0.0)
            throw DataError("series " + s.id.str() + ": negative power value");
}

// Per-cluster weather series on the same grid; row i holds the 7 features of
// time step i.
struct WeatherSeries {
    int location_id = 0;
    std::vector<double> features; // row-major, n_steps x kWeatherFeatures

    int n_steps() const {
        return static_cast<int>(features.size()) / kWeatherFeatures;
    }

    double at(int step, int feature) const {
        return features[static_cast<std::size_t>(step) * kWeatherFeatures + feature];
    }
    double& at(int step, int feature) {
        return features[static_cast<std::size_t>(step) * kWeatherFeatures + feature];
    }

    double at(int day, int slot, int feature) const {
        return at(day * kSlotsPerDay + slot, feature);
    }
};

inline void validate_weather_series(const WeatherSeries& w) {
    if (w.features.size() % kWeatherFeatures != 0)
        throw DataError("weather cluster " + std::to_string(w.location_id) +
                        ": ragged feature rows");
    for (int i = 0; i < w.n_steps(); ++i) {
        double cc = w.at(i, kCloudCover);
        double hu = w.at(i, kHumidity);
        if (cc < 0.0 || cc > 1.0)
            throw DataError("weather cluster " + std::to_string(w.location_id) +
                            ": cloud cover outside [0,1]");
        if (hu < 0.0 || hu > 1.0)
            throw DataError("weather cluster " + std::to_string(w.location_id) +
                            ": humidity outside [0,1]");
    }
}

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
};

} // namespace solarcast::data
