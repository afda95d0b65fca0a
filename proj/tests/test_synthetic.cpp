#include "test_util.hpp"

using namespace solarcast;
using namespace solarcast::data;

TEST_CASE("zero volatility and zero noise give identical days") {
    GeneratorConfig cfg;
    cfg.n_postcodes = 3;
    cfg.n_clusters = 1;
    cfg.n_days = 10;
    cfg.cloud_sigma = 0.0;
    cfg.intra_noise = 0.0;
    RegionalDataset ds = generate_region(cfg);
    for (int d = 1; d < ds.n_days(); ++d)
        for (int slot = 0; slot < kSlotsPerDay; ++slot)
            CHECK(ds.regional.at(d, slot) == ds.regional.at(0, slot));

    // seasonal naive is then a perfect forecast
    std::vector<double> fcst = fc::seasonal_naive(ds.regional, 5);
    std::vector<double> actual(kSlotsPerDay);
    for (int slot = 0; slot < kSlotsPerDay; ++slot)
        actual[static_cast<std::size_t>(slot)] = ds.regional.at(5, slot);
    CHECK(eval::nrmse(actual, fcst) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("structural invariants: nonnegative power, bounded weather") {
    GeneratorConfig cfg;
    cfg.n_postcodes = 8;
    cfg.n_clusters = 3;
    cfg.n_days = 60;
    cfg.seed = 11;
    RegionalDataset ds = generate_region(cfg);
    validate_dataset(ds); // aggregation coherence at 1e-9 relative
    for (const auto& p : ds.postcodes)
        for (double v : p.values)
            CHECK(v >= 0.0);
    for (const auto& w : ds.weather)
        for (int i = 0; i < w.n_steps(); ++i) {
            CHECK(w.at(i, kCloudCover) >= 0.0);
            CHECK(w.at(i, kCloudCover) <= 1.0);
            CHECK(w.at(i, kHumidity) >= 0.0);
            CHECK(w.at(i, kHumidity) <= 1.0);
            CHECK(w.at(i, kWindSpeed) >= 0.0);
        }
}

TEST_CASE("same seed regenerates bit-identically, different seeds differ") {
    GeneratorConfig cfg;
    cfg.n_postcodes = 5;
    cfg.n_clusters = 2;
    cfg.n_days = 15;
    cfg.seed = 77;
    RegionalDataset a = generate_region(cfg);
    RegionalDataset b = generate_region(cfg);
    CHECK(a.regional.values == b.regional.values);
    CHECK(a.weather[1].features == b.weather[1].features);
    CHECK(a.postcode_coords[3].lat == b.postcode_coords[3].lat);

    cfg.seed = 78;
    RegionalDataset c = generate_region(cfg);
    CHECK(a.regional.values != c.regional.values);
}

TEST_CASE("intra-cluster correlation exceeds inter-cluster correlation") {
    GeneratorConfig cfg;
    cfg.n_postcodes = 8;
    cfg.n_clusters = 4;
    cfg.n_days = 180;
    cfg.cloud_rho = 0.8;
    cfg.cloud_sigma = 0.3;
    cfg.seed = 5;
    RegionalDataset ds = generate_region(cfg);

    auto corr = [&](const PowerSeries& x, const PowerSeries& y) {
        double mx = 0, my = 0;
        std::size_t n = x.values.size();
        for (std::size_t i = 0; i < n; ++i) {
            mx += x.values[i];
            my += y.values[i];
        }
        mx /= static_cast<double>(n);
        my /= static_cast<double>(n);
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double dx = x.values[i] - mx, dy = y.values[i] - my;
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
        return sxy / std::sqrt(sxx * syy);
    };

    double intra = 0, inter = 0;
    int n_intra = 0, n_inter = 0;
    for (int i = 0; i < ds.n_postcodes(); ++i)
        for (int j = i + 1; j < ds.n_postcodes(); ++j) {
            double c = corr(ds.postcodes[static_cast<std::size_t>(i)],
                            ds.postcodes[static_cast<std::size_t>(j)]);
            if (ds.subregion_of[static_cast<std::size_t>(i)] ==
                ds.subregion_of[static_cast<std::size_t>(j)]) {
                intra += c;
                ++n_intra;
            } else {
                inter += c;
                ++n_inter;
            }
        }
    REQUIRE(n_intra > 0);
    REQUIRE(n_inter > 0);
    CHECK(intra / n_intra > inter / n_inter);
}

TEST_CASE("emit/load round trip reproduces every value exactly") {
    GeneratorConfig cfg;
    cfg.n_postcodes = 5;
    cfg.n_clusters = 2;
    cfg.n_days = 12;
    cfg.seed = 31;
    RegionalDataset ds = generate_region(cfg);
    emit_dataset(ds, "/tmp/solarcast_roundtrip_ds");
    RegionalDataset loaded = load_dataset("/tmp/solarcast_roundtrip_ds");

    CHECK(loaded.grid == ds.grid);
    CHECK(loaded.subregion_of == ds.subregion_of);
    for (int p = 0; p < ds.n_postcodes(); ++p)
        CHECK(loaded.postcodes[static_cast<std::size_t>(p)].values ==
              ds.postcodes[static_cast<std::size_t>(p)].values);
    CHECK(loaded.regional.values == ds.regional.values);
    for (int c = 0; c < ds.n_clusters(); ++c) {
        CHECK(loaded.weather[static_cast<std::size_t>(c)].features ==
              ds.weather[static_cast<std::size_t>(c)].features);
        CHECK(loaded.subregion_aggregates[static_cast<std::size_t>(c)].values ==
              ds.subregion_aggregates[static_cast<std::size_t>(c)].values);
    }
}

TEST_CASE("loader names the missing weather file") {
    GeneratorConfig cfg;
    cfg.n_postcodes = 4;
    cfg.n_clusters = 2;
    cfg.n_days = 6;
    RegionalDataset ds = generate_region(cfg);
    emit_dataset(ds, "/tmp/solarcast_missing_weather");
    std::filesystem::remove("/tmp/solarcast_missing_weather/weather_1.csv");
    CHECK_THROWS_WITH(load_dataset("/tmp/solarcast_missing_weather"),
                      Catch::Matchers::ContainsSubstring("cluster 1"));
}

TEST_CASE("loader enforces the CSV header order") {
    GeneratorConfig cfg;
    cfg.n_postcodes = 3;
    cfg.n_clusters = 1;
    cfg.n_days = 4;
    RegionalDataset ds = generate_region(cfg);
    emit_dataset(ds, "/tmp/solarcast_badheader");
    auto path = std::filesystem::path("/tmp/solarcast_badheader/regional.csv");
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    in.close();
    text = "kw,timestamp" + text.substr(text.find('\n'));
    write_file_atomic(path, text);
    CHECK_THROWS_WITH(load_dataset("/tmp/solarcast_badheader"),
                      Catch::Matchers::ContainsSubstring("bad header"));
}

TEST_CASE("generator config parsing and validation") {
    auto kv = KeyValueConfig::parse_text("n_postcodes = 9\nn_clusters = 3\n"
                                         "# comment\nn_days = 30\nseed = 4\n",
                                         "test");
    GeneratorConfig cfg = GeneratorConfig::from_config(kv);
    CHECK(cfg.n_postcodes == 9);
    CHECK(cfg.n_clusters == 3);
    CHECK(cfg.n_days == 30);
    CHECK(cfg.seed == 4);

    auto bad = KeyValueConfig::parse_text("n_postcodes = 2\nn_clusters = 5\n",
                                          "test");
    CHECK_THROWS_AS(GeneratorConfig::from_config(bad), ConfigError);

    auto typo = KeyValueConfig::parse_text("n_postcode = 2\n", "test");
    CHECK_THROWS_AS(GeneratorConfig::from_config(typo), ConfigError);
}
