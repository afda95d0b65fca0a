#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "solarcast/core/csv.hpp"
#include "solarcast/core/rng.hpp"
#include "solarcast/data/dataset.hpp"

namespace solarcast::data {

namespace fs = std::filesystem;

// On-disk dataset layout, all decimal text with a mandatory header row:
//   postcodes.csv             postcode_id,lat,lon,subregion
//   power_<postcode_id>.csv   timestamp,kw
//   weather_<cluster>.csv     timestamp,<7 feature columns>
//   regional.csv              timestamp,kw
inline const std::vector<std::string> kPostcodesHeader = {"postcode_id", "lat",
                                                          "lon", "subregion"};
inline const std::vector<std::string> kPowerHeader = {"timestamp", "kw"};

inline std::vector<std::string> weather_header() {
    std::vector<std::string> h = {"timestamp"};
    for (int f = 0; f < kWeatherFeatures; ++f)
        h.emplace_back(kWeatherFeatureNames[f]);
    return h;
}

namespace detail {

inline std::string power_csv(const TimeGrid& grid,
                             const std::vector<double>& values) {
    std::string out = "timestamp,kw\n";
    for (int day = 0; day < grid.n_days; ++day)
        for (int slot = 0; slot < kSlotsPerDay; ++slot) {
            double v = values[static_cast<std::size_t>(day) * kSlotsPerDay + slot];
            out += grid.timestamp(day, slot);
            out += ',';
            out += std::isnan(v) ? "nan" : format_double(v);
            out += '\n';
        }
    return out;
}

// Parses a timestamp column written by TimeGrid::timestamp and checks it
// matches the expected grid position.
inline void check_timestamp(const std::string& ts, const TimeGrid& grid,
                            std::size_t row, const std::string& where) {
    int day = static_cast<int>(row) / kSlotsPerDay;
    int slot = static_cast<int>(row) % kSlotsPerDay;
    if (ts != grid.timestamp(day, slot))
        throw DataError(where + ": timestamp '" + ts + "' breaks the hourly " +
                        std::to_string(kSlotsPerDay) + "-slot day grid (expected " +
                        grid.timestamp(day, slot) + ")");
}

inline TimeGrid grid_from_first_timestamp(const std::string& ts,
                                          std::size_t n_rows,
                                          const std::string& where) {
    if (n_rows % kSlotsPerDay != 0)
        throw DataError(where + ": " + std::to_string(n_rows) +
                        " rows is not a whole number of " +
                        std::to_string(kSlotsPerDay) + "-slot days");
    if (ts.size() < 19 || ts[4] != '-' || ts[7] != '-' || ts[10] != 'T')
        throw DataError(where + ": bad ISO-8601 timestamp '" + ts + "'");
    TimeGrid g;
    g.start.year = static_cast<int>(parse_long(ts.substr(0, 4), where));
    g.start.month = static_cast<int>(parse_long(ts.substr(5, 2), where));
    g.start.day = static_cast<int>(parse_long(ts.substr(8, 2), where));
    g.n_days = static_cast<int>(n_rows) / kSlotsPerDay;
    return g;
}

// Ingestion missing-value policy: a day with more than 25% missing readings
// is rejected; otherwise NaNs are filled by linear interpolation within the
// day (nearest value at the day edges). Returns the filled step indices.
inline std::vector<int> fill_missing(std::vector<double>& values,
                                     const std::string& where) {
    std::vector<int> filled;
    int days = static_cast<int>(values.size()) / kSlotsPerDay;
    for (int d = 0; d < days; ++d) {
        double* v = values.data() + static_cast<std::size_t>(d) * kSlotsPerDay;
        int missing = 0;
        for (int s = 0; s < kSlotsPerDay; ++s)
            if (std::isnan(v[s]))
                ++missing;
        if (missing == 0)
            continue;
        if (missing * 4 > kSlotsPerDay)
            throw DataError(where + ": day " + std::to_string(d) + " has " +
                            std::to_string(missing) + "/" +
                            std::to_string(kSlotsPerDay) +
                            " missing readings (>25%)");
        for (int s = 0; s < kSlotsPerDay; ++s) {
            if (!std::isnan(v[s]))
                continue;
            int prev = s - 1;
            while (prev >= 0 && std::isnan(v[prev]))
                --prev;
            int next = s + 1;
            while (next < kSlotsPerDay && std::isnan(v[next]))
                ++next;
            if (prev < 0 && next >= kSlotsPerDay)
                throw DataError(where + ": day " + std::to_string(d) +
                                " is entirely missing");
            if (prev < 0)
                v[s] = v[next];
            else if (next >= kSlotsPerDay)
                v[s] = v[prev];
            else
                v[s] = v[prev] + (v[next] - v[prev]) *
                                     static_cast<double>(s - prev) /
                                     static_cast<double>(next - prev);
            filled.push_back(d * kSlotsPerDay + s);
        }
    }
    return filled;
}

} // namespace detail

inline void emit_dataset(const RegionalDataset& ds, const fs::path& dir) {
    fs::create_directories(dir);
    std::string pc = "postcode_id,lat,lon,subregion\n";
    for (int p = 0; p < ds.n_postcodes(); ++p) {
        pc += ds.postcodes[static_cast<std::size_t>(p)].id.key;
        pc += ',';
        pc += format_double(ds.postcode_coords[static_cast<std::size_t>(p)].lat);
        pc += ',';
        pc += format_double(ds.postcode_coords[static_cast<std::size_t>(p)].lon);
        pc += ',';
        pc += std::to_string(ds.subregion_of[static_cast<std::size_t>(p)]);
        pc += '\n';
    }
    write_file_atomic(dir / "postcodes.csv", pc);
    for (const auto& s : ds.postcodes)
        write_file_atomic(dir / ("power_" + s.id.key + ".csv"),
                          detail::power_csv(ds.grid, s.values));
    write_file_atomic(dir / "regional.csv",
                      detail::power_csv(ds.grid, ds.regional.values));
    for (const auto& w : ds.weather) {
        std::string out = "timestamp";
        for (int f = 0; f < kWeatherFeatures; ++f) {
            out += ',';
            out += kWeatherFeatureNames[f];
        }
        out += '\n';
        for (int day = 0; day < ds.grid.n_days; ++day)
            for (int slot = 0; slot < kSlotsPerDay; ++slot) {
                out += ds.grid.timestamp(day, slot);
                for (int f = 0; f < kWeatherFeatures; ++f) {
                    out += ',';
                    out += format_double(w.at(day, slot, f));
                }
                out += '\n';
            }
        write_file_atomic(dir / ("weather_" + std::to_string(w.location_id) +
                                 ".csv"),
                          out);
    }
}

inline RegionalDataset load_dataset(const fs::path& dir) {
    RegionalDataset ds;
    std::vector<int> interpolated_steps;
    fs::path pc_path = dir / "postcodes.csv";
    if (!fs::exists(pc_path))
        throw DataError("missing " + pc_path.string());
    CsvReader pcs(pc_path, kPostcodesHeader);
    if (pcs.size() == 0)
        throw DataError(pc_path.string() + ": no postcodes");
    int max_cluster = -1;
    for (std::size_t i = 0; i < pcs.size(); ++i) {
        const auto& row = pcs.row(i);
        ds.postcode_coords.push_back(
            {pcs.number(i, 1), pcs.number(i, 2)});
        int cl = static_cast<int>(pcs.integer(i, 3));
        if (cl < 0)
            throw DataError(pcs.location(i) + ": negative subregion index");
        ds.subregion_of.push_back(cl);
        max_cluster = std::max(max_cluster, cl);
        PowerSeries s;
        s.id = {SeriesKind::Postcode, row[0]};
        ds.postcodes.push_back(std::move(s));
    }

    bool grid_set = false;
    auto load_power = [&](const fs::path& path, std::vector<double>& out) {
        if (!fs::exists(path))
            throw DataError("missing power file " + path.string());
        CsvReader csv(path, kPowerHeader);
        if (csv.size() == 0)
            throw DataError(path.string() + ": no rows");
        if (!grid_set) {
            ds.grid = detail::grid_from_first_timestamp(csv.row(0)[0], csv.size(),
                                                        path.string());
            grid_set = true;
        } else if (static_cast<int>(csv.size()) != ds.grid.n_steps()) {
            throw DataError(path.string() + ": " + std::to_string(csv.size()) +
                            " rows, expected " + std::to_string(ds.grid.n_steps()));
        }
        out.resize(csv.size());
        for (std::size_t i = 0; i < csv.size(); ++i) {
            detail::check_timestamp(csv.row(i)[0], ds.grid, i, csv.location(i));
            out[i] = csv.number(i, 1);
        }
        std::vector<int> filled = detail::fill_missing(out, path.string());
        interpolated_steps.insert(interpolated_steps.end(), filled.begin(),
                                  filled.end());
        for (std::size_t i = 0; i < out.size(); ++i)
            if (out[i] < 0.0)
                throw DataError(path.string() + ": negative power at row " +
                                std::to_string(i + 2));
    };

    for (auto& s : ds.postcodes)
        load_power(dir / ("power_" + s.id.key + ".csv"), s.values);
    PowerSeries regional;
    regional.id = {SeriesKind::Regional, "region"};
    load_power(dir / "regional.csv", regional.values);
    ds.regional = std::move(regional);

    int n_clusters = max_cluster + 1;
    auto wh = weather_header();
    for (int c = 0; c < n_clusters; ++c) {
        fs::path path = dir / ("weather_" + std::to_string(c) + ".csv");
        if (!fs::exists(path))
            throw DataError("missing weather file for cluster " +
                            std::to_string(c) + ": " + path.string());
        CsvReader csv(path, wh);
        if (static_cast<int>(csv.size()) != ds.grid.n_steps())
            throw DataError(path.string() + ": " + std::to_string(csv.size()) +
                            " rows, expected " + std::to_string(ds.grid.n_steps()));
        WeatherSeries w;
        w.location_id = c;
        w.features.resize(csv.size() * kWeatherFeatures);
        for (std::size_t i = 0; i < csv.size(); ++i) {
            detail::check_timestamp(csv.row(i)[0], ds.grid, i, csv.location(i));
            for (int f = 0; f < kWeatherFeatures; ++f) {
                double v = csv.number(i, static_cast<std::size_t>(f) + 1);
                if (std::isnan(v))
                    throw DataError(csv.location(i) + ": missing weather value");
                w.at(static_cast<int>(i), f) = v;
            }
        }
        ds.weather.push_back(std::move(w));
    }

    // Sub-region aggregates are derived, not stored.
    for (int c = 0; c < n_clusters; ++c) {
        std::vector<const PowerSeries*> members;
        for (int p : ds.cluster_members(c))
            members.push_back(&ds.postcodes[static_cast<std::size_t>(p)]);
        if (members.empty())
            throw DataError(pc_path.string() + ": cluster " + std::to_string(c) +
                            " has no postcodes");
        ds.subregion_aggregates.push_back(aggregate_series(
            members, {SeriesKind::SubRegion, std::to_string(c)}));
    }
    validate_dataset(ds, 1e-9, interpolated_steps);
    return ds;
}

// FNV-1a over the dataset's CSV files in sorted filename order; identifies a
// dataset for artifact staleness checks.
inline std::string dataset_hash(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file())
            continue;
        std::string name = e.path().filename().string();
        if (name == "postcodes.csv" || name == "regional.csv" ||
            name.starts_with("power_") || name.starts_with("weather_"))
            files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        std::string blob((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        std::string name = f.filename().string();
        h = fnv1a64(name, h);
        h = fnv1a64(blob, h);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

} // namespace solarcast::data
