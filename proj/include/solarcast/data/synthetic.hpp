#pragma once

#include <cmath>
#include <numbers>

#include "solarcast/core/kvconfig.hpp"
#include "solarcast/core/rng.hpp"
#include "solarcast/data/dataset.hpp"
#include "solarcast/data/dataset_io.hpp"

namespace solarcast::data {

// Deterministic synthetic region: per-cluster AR(1) cloud processes drive
// both the postcode power series and the weather features, so nearby
// (same-cluster) postcodes are more correlated than distant ones and
// day-ahead weather genuinely informs the forecast.
struct GeneratorConfig {
    int n_postcodes = 12;
    int n_clusters = 4;
    int n_days = 180;
    std::uint64_t seed = 1;
    double capacity_min_kw = 3.0;  // per-postcode nameplate range
    double capacity_max_kw = 8.0;
    double cloud_rho = 0.8;    // AR(1) persistence across the stored hours
    double cloud_sigma = 0.6;  // AR(1) innovation scale
    double intra_noise = 0.05; // idiosyncratic per-postcode noise scale
    double weather_noise = 0.0; // simulated forecast error on stored weather
    double cloud_alpha = 0.75;  // heavy cloud retains 1-alpha of generation
    Date start{2020, 1, 1};

    void validate() const {
        if (n_postcodes < 1 || n_days < 1 || n_clusters < 1)
            throw ConfigError("generator: postcode/cluster/day counts must be >= 1");
        if (n_clusters > n_postcodes)
            throw ConfigError("generator: n_clusters (" +
                              std::to_string(n_clusters) +
                              ") must not exceed n_postcodes (" +
                              std::to_string(n_postcodes) + ")");
        if (!(cloud_rho >= 0.0 && cloud_rho < 1.0))
            throw ConfigError("generator: cloud_rho must lie in [0,1)");
        if (cloud_sigma < 0.0 || intra_noise < 0.0 || weather_noise < 0.0)
            throw ConfigError("generator: noise scales must be >= 0");
        if (capacity_min_kw <= 0.0 || capacity_max_kw < capacity_min_kw)
            throw ConfigError("generator: bad capacity range");
        if (!(cloud_alpha >= 0.0 && cloud_alpha <= 1.0))
            throw ConfigError("generator: cloud_alpha must lie in [0,1]");
    }

    static GeneratorConfig from_config(const KeyValueConfig& kv) {
        kv.require_known({"n_postcodes", "n_clusters", "n_days", "seed",
                          "capacity_min_kw", "capacity_max_kw", "cloud_rho",
                          "cloud_sigma", "intra_noise", "weather_noise",
                          "cloud_alpha"},
                         "generator config");
        GeneratorConfig c;
        c.n_postcodes = static_cast<int>(kv.get_long("n_postcodes", c.n_postcodes));
        c.n_clusters = static_cast<int>(kv.get_long("n_clusters", c.n_clusters));
        c.n_days = static_cast<int>(kv.get_long("n_days", c.n_days));
        c.seed = static_cast<std::uint64_t>(kv.get_long("seed", static_cast<long>(c.seed)));
        c.capacity_min_kw = kv.get_double("capacity_min_kw", c.capacity_min_kw);
        c.capacity_max_kw = kv.get_double("capacity_max_kw", c.capacity_max_kw);
        c.cloud_rho = kv.get_double("cloud_rho", c.cloud_rho);
        c.cloud_sigma = kv.get_double("cloud_sigma", c.cloud_sigma);
        c.intra_noise = kv.get_double("intra_noise", c.intra_noise);
        c.weather_noise = kv.get_double("weather_noise", c.weather_noise);
        c.cloud_alpha = kv.get_double("cloud_alpha", c.cloud_alpha);
        c.validate();
        return c;
    }

    std::string echo() const {
        std::string out;
        out += "n_postcodes = " + std::to_string(n_postcodes) + "\n";
        out += "n_clusters = " + std::to_string(n_clusters) + "\n";
        out += "n_days = " + std::to_string(n_days) + "\n";
        out += "seed = " + std::to_string(seed) + "\n";
        out += "capacity_min_kw = " + format_double(capacity_min_kw) + "\n";
        out += "capacity_max_kw = " + format_double(capacity_max_kw) + "\n";
        out += "cloud_rho = " + format_double(cloud_rho) + "\n";
        out += "cloud_sigma = " + format_double(cloud_sigma) + "\n";
        out += "intra_noise = " + format_double(intra_noise) + "\n";
        out += "weather_noise = " + format_double(weather_noise) + "\n";
        out += "cloud_alpha = " + format_double(cloud_alpha) + "\n";
        return out;
    }
};

// Clear-sky profile: raised-cosine bell over the 18 stored slots, peaking
// mid-day, near-zero in the first/last slot. Identical for all postcodes;
// capacity alone differentiates clear-day profiles.
inline double clearsky_factor(int slot) {
    double x = (static_cast<double>(slot) + 0.5) / kSlotsPerDay;
    double s = std::sin(std::numbers::pi * x);
    return s * s;
}

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline RegionalDataset generate_region(const GeneratorConfig& cfg) {
    cfg.validate();
    RegionalDataset ds;
    ds.grid = {cfg.start, cfg.n_days};
    int steps = ds.grid.n_steps();

    // Cluster centres sit on a coarse grid, 1 degree apart; postcodes
    // scatter tightly around their centre so coordinate clustering can
    // recover the assignment.
    int grid_w = static_cast<int>(std::ceil(std::sqrt(cfg.n_clusters)));
    std::vector<GeoPoint> centers;
    for (int c = 0; c < cfg.n_clusters; ++c)
        centers.push_back({-32.0 + 1.0 * (c / grid_w), 115.0 + 1.0 * (c % grid_w)});

    // Latent per-cluster cloud processes (AR(1) across stored hours, squashed
    // to [0,1]). Stationary start so sigma = 0 collapses to a constant.
    std::vector<std::vector<double>> cloud(static_cast<std::size_t>(cfg.n_clusters));
    for (int c = 0; c < cfg.n_clusters; ++c) {
        Rng rng(derive_seed(cfg.seed, "cloud", static_cast<std::uint64_t>(c)));
        std::vector<double>& cl = cloud[static_cast<std::size_t>(c)];
        cl.resize(static_cast<std::size_t>(steps));
        double stat = cfg.cloud_sigma / std::sqrt(1.0 - cfg.cloud_rho * cfg.cloud_rho);
        double x = stat * rng.normal();
        for (int i = 0; i < steps; ++i) {
            cl[static_cast<std::size_t>(i)] = logistic(x);
            x = cfg.cloud_rho * x + cfg.cloud_sigma * rng.normal();
        }
    }

    // Postcodes: round-robin cluster membership, capacity drawn per postcode.
    Rng prng(derive_seed(cfg.seed, "postcodes"));
    for (int p = 0; p < cfg.n_postcodes; ++p) {
        int c = p % cfg.n_clusters;
        ds.subregion_of.push_back(c);
        const GeoPoint& ctr = centers[static_cast<std::size_t>(c)];
        ds.postcode_coords.push_back({ctr.lat + 0.05 * prng.normal(),
                                      ctr.lon + 0.05 * prng.normal()});
        double capacity = prng.uniform(cfg.capacity_min_kw, cfg.capacity_max_kw);

        PowerSeries s;
        char key[16];
        std::snprintf(key, sizeof(key), "p%03d", p);
        s.id = {SeriesKind::Postcode, key};
        s.values.resize(static_cast<std::size_t>(steps));
        Rng nrng(derive_seed(cfg.seed, "power", static_cast<std::uint64_t>(p)));
        const auto& cl = cloud[static_cast<std::size_t>(c)];
        for (int i = 0; i < steps; ++i) {
            int slot = i % kSlotsPerDay;
            double noise = 1.0 + cfg.intra_noise * nrng.normal();
            double v = capacity * clearsky_factor(slot) *
                       (1.0 - cfg.cloud_alpha * cl[static_cast<std::size_t>(i)]) *
                       noise;
            s.values[static_cast<std::size_t>(i)] = std::max(0.0, v);
        }
        ds.postcodes.push_back(std::move(s));
    }

    // Weather features derived from the latent process; the stored values
    // optionally carry forecast-error noise while power always follows the
    // true latent cloud.
    for (int c = 0; c < cfg.n_clusters; ++c) {
        Rng wrng(derive_seed(cfg.seed, "weather", static_cast<std::uint64_t>(c)));
        WeatherSeries w;
        w.location_id = c;
        w.features.resize(static_cast<std::size_t>(steps) * kWeatherFeatures);
        const auto& cl = cloud[static_cast<std::size_t>(c)];
        for (int i = 0; i < steps; ++i) {
            int slot = i % kSlotsPerDay;
            double cc = cl[static_cast<std::size_t>(i)];
            double cs = clearsky_factor(slot);
            double temp = 15.0 + 12.0 * cs * (1.0 - 0.6 * cc) + 1.0 * wrng.normal();
            double uv = 11.0 * cs * (1.0 - 0.8 * cc);
            double humidity = 0.45 + 0.4 * (cc - 0.5) + 0.05 * wrng.normal();
            double pressure = 1013.0 - 6.0 * (cc - 0.5) + 1.5 * wrng.normal();
            double wind = 3.0 + 2.0 * cc + 1.0 * wrng.normal();
            double dew = temp - (1.0 - humidity) * 20.0;

            auto put = [&](int f, double v) {
                if (cfg.weather_noise > 0.0)
                    v += cfg.weather_noise * wrng.normal();
                if (f == kCloudCover || f == kHumidity)
                    v = std::clamp(v, 0.0, 1.0);
                if (f == kWindSpeed || f == kUvIndex)
                    v = std::max(0.0, v);
                w.at(i, f) = v;
            };
            put(kWindSpeed, std::max(0.0, wind));
            put(kTemperature, temp);
            put(kUvIndex, uv);
            put(kCloudCover, cc);
            put(kHumidity, std::clamp(humidity, 0.0, 1.0));
            put(kPressure, pressure);
            put(kDewPoint, dew);
        }
        ds.weather.push_back(std::move(w));
    }

    std::vector<const PowerSeries*> all;
    for (const auto& p : ds.postcodes)
        all.push_back(&p);
    ds.regional = aggregate_series(all, {SeriesKind::Regional, "region"});
    for (int c = 0; c < cfg.n_clusters; ++c) {
        std::vector<const PowerSeries*> members;
        for (int p : ds.cluster_members(c))
            members.push_back(&ds.postcodes[static_cast<std::size_t>(p)]);
        ds.subregion_aggregates.push_back(aggregate_series(
            members, {SeriesKind::SubRegion, std::to_string(c)}));
    }
    validate_dataset(ds);
    return ds;
}

} // namespace solarcast::data
