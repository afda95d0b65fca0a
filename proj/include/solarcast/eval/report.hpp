#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>

#include <json.hpp>

#include "solarcast/eval/mannwhitney.hpp"
#include "solarcast/eval/metrics.hpp"
#include "solarcast/forecast/strategies.hpp"

namespace solarcast::eval {

// ---------------------------------------------------------------------------
// Forecast records (CSV interchange format)
// ---------------------------------------------------------------------------

struct ForecastRecord {
    int day = 0;
    int slot = 0;
    double actual_kw = 0.0;
    double forecast_kw = 0.0;
    std::string strategy;
    std::string model_family;
    std::uint64_t seed = 0;
};

inline const std::vector<std::string> kForecastHeader = {
    "day", "slot", "actual_kw", "forecast_kw", "strategy", "model_family",
    "seed"};

inline std::string forecast_csv(const std::vector<ForecastRecord>& records) {
    std::string out = "day,slot,actual_kw,forecast_kw,strategy,model_family,seed\n";
    for (const auto& r : records) {
        out += std::to_string(r.day);
        out += ',';
        out += std::to_string(r.slot);
        out += ',';
        out += format_double(r.actual_kw);
        out += ',';
        out += format_double(r.forecast_kw);
        out += ',';
        out += r.strategy;
        out += ',';
        out += r.model_family;
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

inline std::vector<ForecastRecord> read_forecast_csv(
    const std::filesystem::path& path) {
    CsvReader csv(path, kForecastHeader);
    std::vector<ForecastRecord> out;
    out.reserve(csv.size());
    for (std::size_t i = 0; i < csv.size(); ++i) {
        ForecastRecord r;
        r.day = static_cast<int>(csv.integer(i, 0));
        r.slot = static_cast<int>(csv.integer(i, 1));
        r.actual_kw = csv.number(i, 2);
        r.forecast_kw = csv.number(i, 3);
        r.strategy = csv.row(i)[4];
        r.model_family = csv.row(i)[5];
        r.seed = static_cast<std::uint64_t>(csv.integer(i, 6));
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

struct ReportRow {
    std::string strategy;
    std::string model_family;
    std::string input_series;
    int n_models = 0;
    int n_seeds = 0;
    double nrmse_mean = std::numeric_limits<double>::quiet_NaN();
    double nrmse_std = std::numeric_limits<double>::quiet_NaN();
    double skill_pct = std::numeric_limits<double>::quiet_NaN();
    double error_reduction_vs_ref_pct = std::numeric_limits<double>::quiet_NaN();
    double p_vs_ref = std::numeric_limits<double>::quiet_NaN();
    bool significant = false;
    int undefined_days = 0;
    bool failed = false;

    std::string label() const { return strategy + "." + model_family; }
};

struct EvaluationReport {
    std::string reference; // "<strategy>.<family>" significance reference
    double sn_nrmse = std::numeric_limits<double>::quiet_NaN();
    std::vector<ReportRow> rows;
};

inline std::string input_series_desc(fc::StrategyKind k, fc::ModelFamily f) {
    switch (k) {
    case fc::StrategyKind::Direct:
        if (f == fc::ModelFamily::HtcnnA1 || f == fc::ModelFamily::HtcnnA2)
            return "aggregated+postcode+weather";
        return "aggregated";
    case fc::StrategyKind::PostcodeAGG:
        if (f == fc::ModelFamily::SeasonalNaive || f == fc::ModelFamily::LinearAr)
            return "postcode";
        return "postcode+weather";
    case fc::StrategyKind::SubRegionAGG:
        return "subregion+postcode+weather";
    case fc::StrategyKind::GlobalTCN:
        return "postcode+weather(pooled)";
    }
    return "?";
}

namespace detail {

struct DayKey {
    std::string label; // strategy.family
    std::uint64_t seed;
    int day;

    bool operator<(const DayKey& o) const {
        return std::tie(label, seed, day) < std::tie(o.label, o.seed, o.day);
    }
};

// Per (strategy.family, seed, day) nRMSE series derived from raw records.
struct PerDayErrors {
    // label -> seed -> ordered per-day nrmse (NaN days excluded, counted)
    std::map<std::string, std::map<std::uint64_t, std::vector<double>>> by_seed;
    std::map<std::string, int> undefined_days;
};

inline PerDayErrors per_day_errors(const std::vector<ForecastRecord>& records) {
    std::map<DayKey, std::vector<std::pair<int, std::pair<double, double>>>> grouped;
    for (const auto& r : records) {
        DayKey k{r.strategy + "." + r.model_family, r.seed, r.day};
        grouped[k].push_back({r.slot, {r.actual_kw, r.forecast_kw}});
    }
    PerDayErrors out;
    for (auto& [key, slots] : grouped) {
        std::sort(slots.begin(), slots.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<double> actual, forecast;
        for (const auto& [slot, af] : slots) {
            (void)slot;
            actual.push_back(af.first);
            forecast.push_back(af.second);
        }
        double e = nrmse(actual, forecast);
        if (std::isnan(e))
            out.undefined_days[key.label] += 1;
        else
            out.by_seed[key.label][key.seed].push_back(e);
    }
    return out;
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

inline double pop_std(const std::vector<double>& v) {
    double m = mean(v);
    double s = 0.0;
    for (double x : v)
        s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

} // namespace detail

// Row descriptors the report builder uses to order and annotate rows.
struct RowSpec {
    fc::StrategyKind kind;
    fc::ModelFamily family;
    int n_models = 0;
    bool failed = false;

    std::string label() const {
        return std::string(fc::to_string(kind)) + "." +
               std::string(fc::to_string(family));
    }
};

// Builds the report from raw forecast records. Averaging order is fixed:
// per-day nRMSE -> mean over test days per seed -> mean (and population std)
// across seeds. Significance compares per-day nRMSE pooled across seeds
// against the reference row via the Mann-Whitney U test at p < 0.05.
inline EvaluationReport compute_report(const std::vector<ForecastRecord>& records,
                                       const std::vector<RowSpec>& row_specs,
                                       const std::string& reference_label) {
    detail::PerDayErrors errors = detail::per_day_errors(records);

    EvaluationReport report;
    report.reference = reference_label;

    auto pooled = [&](const std::string& label) {
        std::vector<double> all;
        auto it = errors.by_seed.find(label);
        if (it != errors.by_seed.end())
            for (const auto& [seed, days] : it->second) {
                (void)seed;
                all.insert(all.end(), days.begin(), days.end());
            }
        return all;
    };

    bool have_reference = false;
    for (const auto& rs : row_specs)
        if (rs.label() == reference_label && !rs.failed)
            have_reference = true;
    if (!have_reference)
        throw ConfigError("report: reference '" + reference_label +
                          "' is not among the evaluated strategies");
    std::vector<double> ref_pool = pooled(reference_label);

    // Seasonal-naive reference for the skill score, when present.
    std::optional<double> sn_nrmse;
    for (const auto& rs : row_specs) {
        if (rs.family != fc::ModelFamily::SeasonalNaive || rs.failed)
            continue;
        auto it = errors.by_seed.find(rs.label());
        if (it == errors.by_seed.end())
            continue;
        std::vector<double> seed_means;
        for (const auto& [seed, days] : it->second) {
            (void)seed;
            seed_means.push_back(detail::mean(days));
        }
        sn_nrmse = detail::mean(seed_means);
        break;
    }
    if (sn_nrmse)
        report.sn_nrmse = *sn_nrmse;

    double ref_nrmse = std::numeric_limits<double>::quiet_NaN();
    {
        auto it = errors.by_seed.find(reference_label);
        if (it != errors.by_seed.end()) {
            std::vector<double> seed_means;
            for (const auto& [seed, days] : it->second) {
                (void)seed;
                seed_means.push_back(detail::mean(days));
            }
            ref_nrmse = detail::mean(seed_means);
        }
    }

    for (const auto& rs : row_specs) {
        ReportRow row;
        row.strategy = std::string(fc::to_string(rs.kind));
        row.model_family = std::string(fc::to_string(rs.family));
        row.input_series = input_series_desc(rs.kind, rs.family);
        row.n_models = rs.n_models;
        row.failed = rs.failed;
        std::string label = rs.label();
        auto uit = errors.undefined_days.find(label);
        if (uit != errors.undefined_days.end())
            row.undefined_days = uit->second;
        auto it = errors.by_seed.find(label);
        if (!rs.failed && it != errors.by_seed.end() && !it->second.empty()) {
            std::vector<double> seed_means;
            for (const auto& [seed, days] : it->second) {
                (void)seed;
                seed_means.push_back(detail::mean(days));
            }
            row.n_seeds = static_cast<int>(seed_means.size());
            row.nrmse_mean = detail::mean(seed_means);
            row.nrmse_std = detail::pop_std(seed_means);
            if (sn_nrmse && *sn_nrmse > 0.0)
                row.skill_pct = skill_score(row.nrmse_mean, *sn_nrmse);
            if (!std::isnan(ref_nrmse) && ref_nrmse > 0.0)
                row.error_reduction_vs_ref_pct =
                    error_reduction_pct(ref_nrmse, row.nrmse_mean);
            std::vector<double> this_pool = pooled(label);
            if (!ref_pool.empty() && !this_pool.empty()) {
                MannWhitneyResult mw = mann_whitney_u(this_pool, ref_pool);
                row.p_vs_ref = mw.p;
                row.significant = mw.p < 0.05;
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

inline nlohmann::json report_to_json(const EvaluationReport& r) {
    auto num = [](double v) -> nlohmann::json {
        if (std::isnan(v))
            return nullptr;
        return v;
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"strategy", row.strategy},
                        {"model_family", row.model_family},
                        {"input_series", row.input_series},
                        {"n_models", row.n_models},
                        {"n_seeds", row.n_seeds},
                        {"nrmse_mean", num(row.nrmse_mean)},
                        {"nrmse_std", num(row.nrmse_std)},
                        {"skill_score_pct", num(row.skill_pct)},
                        {"error_reduction_vs_ref_pct",
                         num(row.error_reduction_vs_ref_pct)},
                        {"p_vs_reference", num(row.p_vs_ref)},
                        {"significant_vs_reference", row.significant},
                        {"undefined_days", row.undefined_days},
                        {"failed", row.failed}});
    }
    return {{"reference", r.reference},
            {"sn_nrmse", num(r.sn_nrmse)},
            {"rows", rows}};
}

// Aligned-column text table mirroring the result-table layout: input series,
// model, strategy, number of models, nRMSE +- std, SS %. A '*' marks rows
// significantly different from the reference.
inline std::string report_to_text(const EvaluationReport& r) {
    std::vector<std::array<std::string, 6>> cells;
    cells.push_back({"Input Series", "Model", "Strategy", "Models",
                     "nRMSE (+- std)", "SS (%)"});
    for (const auto& row : r.rows) {
        char nr[64];
        if (row.failed) {
            std::snprintf(nr, sizeof(nr), "FAILED");
        } else {
            std::snprintf(nr, sizeof(nr), "%.4f (+- %.4f)%s", row.nrmse_mean,
                          row.nrmse_std, row.significant ? "*" : "");
        }
        char ss[32];
        if (std::isnan(row.skill_pct))
            std::snprintf(ss, sizeof(ss), "-");
        else
            std::snprintf(ss, sizeof(ss), "%.2f", row.skill_pct);
        cells.push_back({row.input_series, row.model_family, row.strategy,
                         std::to_string(row.n_models), nr, ss});
    }
    std::array<std::size_t, 6> width{};
    for (const auto& row : cells)
        for (std::size_t c = 0; c < 6; ++c)
            width[c] = std::max(width[c], row[c].size());
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t c = 0; c < 6; ++c) {
            out += cells[i][c];
            if (c + 1 < 6)
                out += std::string(width[c] - cells[i][c].size() + 2, ' ');
        }
        out += '\n';
        if (i == 0)
            out += std::string(
                       std::accumulate(width.begin(), width.end(), std::size_t{10}),
                       '-') +
                   "\n";
    }
    out += "* significantly different from reference " + r.reference +
           " (Mann-Whitney U, p < 0.05)\n";
    return out;
}

// ---------------------------------------------------------------------------
// Experiment driver
// ---------------------------------------------------------------------------

struct StrategyRun {
    fc::StrategyKind kind;
    fc::ModelFamily family;
    fc::HyperParams hyper;
};

struct ExperimentResult {
    std::vector<ForecastRecord> records;
    EvaluationReport report;
};

// Trains and evaluates every (strategy, seed) pair on the fixed split and
// assembles the report. A training abort (numerical failure) marks the
// strategy failed and the experiment continues.
inline ExperimentResult run_experiment(const data::RegionalDataset& ds,
                                       const std::vector<StrategyRun>& runs,
                                       const std::vector<std::uint64_t>& seeds,
                                       int test_days,
                                       const std::string& reference_label,
                                       int jobs = 1) {
    if (seeds.empty())
        throw ConfigError("run_experiment: need at least one seed");
    fc::DataContext ctx = fc::DataContext::make(ds, test_days);
    ExperimentResult result;
    std::vector<RowSpec> row_specs;
    for (const auto& run : runs) {
        RowSpec rs{run.kind, run.family,
                   fc::expected_model_count(run.kind, ds.n_clusters(),
                                            ds.n_postcodes()),
                   false};
        for (std::uint64_t seed : seeds) {
            try {
                fc::StrategyModel model = fc::train_strategy(
                    ctx, run.kind, run.family, run.hyper, seed, jobs);
                for (int day = ctx.split.test.begin; day < ctx.split.test.end;
                     ++day) {
                    fc::RegionalForecast fcast = fc::forecast_day(ctx, model, day);
                    for (int slot = 0; slot < data::kSlotsPerDay; ++slot)
                        result.records.push_back(
                            {day, slot, ds.regional.at(day, slot),
                             fcast.values[static_cast<std::size_t>(slot)],
                             std::string(fc::to_string(run.kind)),
                             std::string(fc::to_string(run.family)), seed});
                }
            } catch (const NumericError&) {
                rs.failed = true;
            }
        }
        row_specs.push_back(rs);
    }
    result.report = compute_report(result.records, row_specs, reference_label);
    return result;
}

} // namespace solarcast::eval
