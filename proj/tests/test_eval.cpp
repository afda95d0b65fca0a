#include "test_util.hpp"

using namespace solarcast;
using namespace solarcast::eval;

namespace {

// Independent exact Mann-Whitney oracle: enumerate every split of the pooled
// values via a selection mask, compute U by direct pair counting
// (sum over pairs of [a > b] + 0.5 [a == b]), and apply the same two-sided
// extremeness criterion.
double oracle_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::size_t n = pooled.size(), na = a.size();
    auto pair_u = [](const std::vector<double>& xa, const std::vector<double>& xb) {
        double u = 0.0;
        for (double x : xa)
            for (double y : xb) {
                if (x > y)
                    u += 1.0;
                else if (x == y)
                    u += 0.5;
            }
        return u;
    };
    double nm = static_cast<double>(na) * static_cast<double>(b.size());
    double obs = std::min(pair_u(a, b), pair_u(b, a));
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(na), true);
    std::sort(mask.begin(), mask.end());
    long total = 0, extreme = 0;
    do {
        std::vector<double> xa, xb;
        for (std::size_t i = 0; i < n; ++i)
            (mask[i] ? xa : xb).push_back(pooled[i]);
        double u = pair_u(xa, xb);
        ++total;
        if (std::min(u, nm - u) <= obs + 1e-9)
            ++extreme;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return static_cast<double>(extreme) / static_cast<double>(total);
}

} // namespace

TEST_CASE("nrmse: exact hand cases") {
    std::vector<double> actual{2.0, 2.0};
    std::vector<double> forecast{1.0, 3.0};
    // RMSE 1, mean 2 -> 0.5
    CHECK(nrmse(actual, forecast) == Catch::Approx(0.5));

    CHECK(nrmse(actual, actual) == 0.0);

    // scale invariance
    std::vector<double> a2{6.0, 6.0}, f2{3.0, 9.0};
    CHECK(nrmse(a2, f2) == Catch::Approx(nrmse(actual, forecast)));

    // zero-mean actual day is flagged undefined
    std::vector<double> zeros{0.0, 0.0};
    CHECK(std::isnan(nrmse(zeros, forecast)));
}

TEST_CASE("skill score reproduces the published arithmetic") {
    CHECK(skill_score(0.288, 0.288) == Catch::Approx(0.0));
    CHECK(skill_score(0.172, 0.288) == Catch::Approx(40.28).margin(0.01));
    CHECK(skill_score(0.184, 0.288) == Catch::Approx(36.11).margin(0.01));
    CHECK_THROWS_AS(skill_score(0.2, 0.0), DataError);
}

TEST_CASE("error reduction percentage") {
    CHECK(error_reduction_pct(0.184, 0.172) == Catch::Approx(6.52).margin(0.01));
    CHECK(error_reduction_pct(0.25, 0.25) == Catch::Approx(0.0));
    CHECK(error_reduction_pct(0.288, 0.172) == Catch::Approx(40.28).margin(0.01));
}

TEST_CASE("mann-whitney: identical samples give p = 1") {
    std::vector<double> a{1, 2, 3, 4, 5};
    auto r = mann_whitney_u(a, a);
    CHECK(r.p == Catch::Approx(1.0));

    // all values identical across both samples, large n (approximation path)
    std::vector<double> big_a(20, 3.0), big_b(25, 3.0);
    auto r2 = mann_whitney_u(big_a, big_b);
    CHECK_FALSE(r2.exact);
    CHECK(r2.p == 1.0);
}

TEST_CASE("mann-whitney: U_A + U_B == n_A * n_B") {
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t na = 1 + rng.index(10), nb = 1 + rng.index(10);
        std::vector<double> a, b;
        for (std::size_t i = 0; i < na; ++i)
            a.push_back(std::round(rng.uniform(0, 6))); // ties likely
        for (std::size_t i = 0; i < nb; ++i)
            b.push_back(std::round(rng.uniform(0, 6)));
        double ua = mann_whitney_u(a, b).u;
        double ub = mann_whitney_u(b, a).u;
        CHECK(ua + ub == Catch::Approx(static_cast<double>(na * nb)));
    }
}

TEST_CASE("mann-whitney exact: {1,2,3} vs {4,5,6} over all 20 arrangements") {
    std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    auto r = mann_whitney_u(a, b);
    CHECK(r.exact);
    CHECK(r.u == Catch::Approx(0.0)); // every a below every b
    CHECK(r.p == Catch::Approx(0.1)); // 2 extreme arrangements / C(6,3)=20
    CHECK(r.p == Catch::Approx(oracle_exact_p(a, b)));
}

TEST_CASE("mann-whitney exact path agrees with the enumeration oracle") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t na = 1 + rng.index(6), nb = 1 + rng.index(6);
        std::vector<double> a, b;
        for (std::size_t i = 0; i < na; ++i)
            a.push_back(std::round(rng.uniform(0, 5)));
        for (std::size_t i = 0; i < nb; ++i)
            b.push_back(std::round(rng.uniform(0, 5)));
        auto r = mann_whitney_u(a, b);
        REQUIRE(r.exact);
        CHECK(r.p == Catch::Approx(oracle_exact_p(a, b)).margin(1e-12));
    }
}

TEST_CASE("mann-whitney approximation: separated samples are significant") {
    std::vector<double> a, b;
    for (int i = 0; i < 15; ++i) {
        a.push_back(1.0 + 0.01 * i);
        b.push_back(2.0 + 0.01 * i);
    }
    auto r = mann_whitney_u(a, b);
    CHECK_FALSE(r.exact);
    CHECK(r.p < 1e-4);
}

namespace {

std::vector<ForecastRecord> make_records(const std::string& strategy,
                                         const std::string& family,
                                         std::uint64_t seed, int days,
                                         double bias) {
    std::vector<ForecastRecord> out;
    Rng rng(seed * 977 + 13);
    for (int d = 0; d < days; ++d)
        for (int s = 0; s < 18; ++s) {
            double actual = 5.0 + std::sin(0.3 * s) + 0.1 * d;
            out.push_back({d, s, actual, actual + bias + 0.05 * rng.normal(),
                           strategy, family, seed});
        }
    return out;
}

} // namespace

TEST_CASE("report: single seed has zero std; SN identical across seeds") {
    std::vector<ForecastRecord> records;
    auto r1 = make_records("direct", "sn", 1, 6, 0.4);
    records.insert(records.end(), r1.begin(), r1.end());
    std::vector<RowSpec> specs{
        {fc::StrategyKind::Direct, fc::ModelFamily::SeasonalNaive, 1, false}};
    EvaluationReport rep = compute_report(records, specs, "direct.sn");
    CHECK(rep.rows[0].n_seeds == 1);
    CHECK(rep.rows[0].nrmse_std == 0.0);
    CHECK(rep.rows[0].skill_pct == Catch::Approx(0.0));
    CHECK(rep.rows[0].p_vs_ref == Catch::Approx(1.0));
    CHECK_FALSE(rep.rows[0].significant);
}

TEST_CASE("report: averaging order is per-day, per-seed, then across seeds") {
    std::vector<ForecastRecord> records;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    for (auto s : seeds) {
        auto r = make_records("direct", "tcn", s, 5, 0.2 + 0.1 * double(s));
        records.insert(records.end(), r.begin(), r.end());
    }
    auto sn = make_records("direct", "sn", 1, 5, 0.5);
    records.insert(records.end(), sn.begin(), sn.end());

    std::vector<RowSpec> specs{
        {fc::StrategyKind::Direct, fc::ModelFamily::Tcn, 1, false},
        {fc::StrategyKind::Direct, fc::ModelFamily::SeasonalNaive, 1, false}};
    EvaluationReport rep = compute_report(records, specs, "direct.sn");

    // recompute by hand with the documented order
    std::vector<double> seed_means;
    for (auto s : seeds) {
        std::vector<double> day_errors;
        for (int d = 0; d < 5; ++d) {
            std::vector<double> actual, fcst;
            for (const auto& r : records)
                if (r.strategy == "direct" && r.model_family == "tcn" &&
                    r.seed == s && r.day == d) {
                    actual.push_back(r.actual_kw);
                    fcst.push_back(r.forecast_kw);
                }
            day_errors.push_back(nrmse(actual, fcst));
        }
        double m = 0;
        for (double e : day_errors)
            m += e;
        seed_means.push_back(m / 5.0);
    }
    double mean = (seed_means[0] + seed_means[1] + seed_means[2]) / 3.0;
    CHECK(rep.rows[0].nrmse_mean == Catch::Approx(mean).epsilon(1e-12));
    double var = 0;
    for (double m : seed_means)
        var += (m - mean) * (m - mean);
    CHECK(rep.rows[0].nrmse_std ==
          Catch::Approx(std::sqrt(var / 3.0)).epsilon(1e-12));

    // skill score vs the SN row
    CHECK(rep.rows[0].skill_pct ==
          Catch::Approx(skill_score(rep.rows[0].nrmse_mean, rep.rows[1].nrmse_mean))
              .epsilon(1e-12));
}

TEST_CASE("report reproduces exactly from its own CSV") {
    std::vector<ForecastRecord> records;
    for (auto s : {1ULL, 2ULL}) {
        auto r = make_records("postcode-agg", "tcn", s, 7, 0.3);
        records.insert(records.end(), r.begin(), r.end());
    }
    auto sn = make_records("direct", "sn", 1, 7, 0.6);
    records.insert(records.end(), sn.begin(), sn.end());
    std::vector<RowSpec> specs{
        {fc::StrategyKind::PostcodeAGG, fc::ModelFamily::Tcn, 12, false},
        {fc::StrategyKind::Direct, fc::ModelFamily::SeasonalNaive, 1, false}};
    EvaluationReport rep = compute_report(records, specs, "direct.sn");

    write_file_atomic("/tmp/solarcast_eval_rt.csv", forecast_csv(records));
    auto loaded = read_forecast_csv("/tmp/solarcast_eval_rt.csv");
    EvaluationReport rep2 = compute_report(loaded, specs, "direct.sn");
    REQUIRE(rep2.rows.size() == rep.rows.size());
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        CHECK(std::abs(rep2.rows[i].nrmse_mean - rep.rows[i].nrmse_mean) <= 1e-12);
        CHECK(std::abs(rep2.rows[i].nrmse_std - rep.rows[i].nrmse_std) <= 1e-12);
        CHECK(std::abs(rep2.rows[i].skill_pct - rep.rows[i].skill_pct) <= 1e-12);
        CHECK(rep2.rows[i].p_vs_ref == rep.rows[i].p_vs_ref);
    }

    // JSON emission is stable
    CHECK(report_to_json(rep).dump() == report_to_json(rep2).dump());
}

TEST_CASE("report text table carries the expected columns") {
    auto sn = make_records("direct", "sn", 1, 4, 0.5);
    std::vector<RowSpec> specs{
        {fc::StrategyKind::Direct, fc::ModelFamily::SeasonalNaive, 1, false}};
    EvaluationReport rep = compute_report(sn, specs, "direct.sn");
    std::string text = report_to_text(rep);
    CHECK(text.find("Input Series") != std::string::npos);
    CHECK(text.find("Model") != std::string::npos);
    CHECK(text.find("Strategy") != std::string::npos);
    CHECK(text.find("Models") != std::string::npos);
    CHECK(text.find("nRMSE") != std::string::npos);
    CHECK(text.find("SS (%)") != std::string::npos);
    CHECK(text.find("direct") != std::string::npos);
}

TEST_CASE("missing reference strategy is rejected") {
    auto sn = make_records("direct", "sn", 1, 4, 0.5);
    std::vector<RowSpec> specs{
        {fc::StrategyKind::Direct, fc::ModelFamily::SeasonalNaive, 1, false}};
    CHECK_THROWS_AS(compute_report(sn, specs, "direct.tcn"), ConfigError);
}
