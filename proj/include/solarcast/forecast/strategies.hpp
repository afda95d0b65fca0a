#pragma once

#include <atomic>
#include <mutex>
#include <optional>
#include <thread>

#include "solarcast/data/scaler.hpp"
#include "solarcast/data/synthetic.hpp"
#include "solarcast/forecast/linear_ar.hpp"
#include "solarcast/forecast/seasonal_naive.hpp"
#include "solarcast/nn/builders.hpp"
#include "solarcast/nn/train.hpp"

namespace solarcast::fc {

// ---------------------------------------------------------------------------
// Strategy and model-family vocabulary
// ---------------------------------------------------------------------------

enum class StrategyKind { Direct, SubRegionAGG, PostcodeAGG, GlobalTCN };

enum class ModelFamily {
    SeasonalNaive, // SN
    LinearAr,      // seasonal linear AR (classical stand-in), power lags only
    LinearArX,     // + the forecast day's weather features
    Lstm,
    Cnn,
    Tcn,
    HtcnnA1,
    HtcnnA2,
};

inline std::string_view to_string(StrategyKind k) {
    switch (k) {
    case StrategyKind::Direct:
        return "direct";
    case StrategyKind::SubRegionAGG:
        return "subregion-agg";
    case StrategyKind::PostcodeAGG:
        return "postcode-agg";
    case StrategyKind::GlobalTCN:
        return "global-tcn";
    }
    return "?";
}

inline std::string_view to_string(ModelFamily f) {
    switch (f) {
    case ModelFamily::SeasonalNaive:
        return "sn";
    case ModelFamily::LinearAr:
        return "slr";
    case ModelFamily::LinearArX:
        return "slrx";
    case ModelFamily::Lstm:
        return "lstm";
    case ModelFamily::Cnn:
        return "cnn";
    case ModelFamily::Tcn:
        return "tcn";
    case ModelFamily::HtcnnA1:
        return "htcnn-a1";
    case ModelFamily::HtcnnA2:
        return "htcnn-a2";
    }
    return "?";
}

inline StrategyKind parse_strategy(std::string_view s) {
    if (s == "direct")
        return StrategyKind::Direct;
    if (s == "subregion-agg")
        return StrategyKind::SubRegionAGG;
    if (s == "postcode-agg")
        return StrategyKind::PostcodeAGG;
    if (s == "global-tcn")
        return StrategyKind::GlobalTCN;
    throw ConfigError("unknown strategy '" + std::string(s) +
                      "' (expected direct|subregion-agg|postcode-agg|global-tcn)");
}

inline ModelFamily parse_family(std::string_view s) {
    if (s == "sn")
        return ModelFamily::SeasonalNaive;
    if (s == "slr")
        return ModelFamily::LinearAr;
    if (s == "slrx")
        return ModelFamily::LinearArX;
    if (s == "lstm")
        return ModelFamily::Lstm;
    if (s == "cnn")
        return ModelFamily::Cnn;
    if (s == "tcn")
        return ModelFamily::Tcn;
    if (s == "htcnn-a1")
        return ModelFamily::HtcnnA1;
    if (s == "htcnn-a2")
        return ModelFamily::HtcnnA2;
    throw ConfigError("unknown model family '" + std::string(s) +
                      "' (expected sn|slr|slrx|lstm|cnn|tcn|htcnn-a1|htcnn-a2)");
}

// Strategy x family pairs, following the result table's rows: the HTCNNs run
// Direct or SubRegionAGG; classical and plain deep baselines run Direct or
// PostcodeAGG (weather-aware SLRX only per postcode); the global TCN is its
// own strategy.
inline bool compatible(StrategyKind k, ModelFamily f) {
    switch (k) {
    case StrategyKind::Direct:
        return f != ModelFamily::LinearArX;
    case StrategyKind::PostcodeAGG:
        return f == ModelFamily::SeasonalNaive || f == ModelFamily::LinearAr ||
               f == ModelFamily::LinearArX || f == ModelFamily::Lstm ||
               f == ModelFamily::Cnn || f == ModelFamily::Tcn;
    case StrategyKind::SubRegionAGG:
        return f == ModelFamily::HtcnnA1 || f == ModelFamily::HtcnnA2;
    case StrategyKind::GlobalTCN:
        return f == ModelFamily::Tcn;
    }
    return false;
}

inline void require_compatible(StrategyKind k, ModelFamily f) {
    if (!compatible(k, f))
        throw ConfigError("model family '" + std::string(to_string(f)) +
                          "' cannot be used with strategy '" +
                          std::string(to_string(k)) + "'");
}

// Model-count contract: Direct = 1, SubRegionAGG = #clusters,
// PostcodeAGG = #postcodes, GlobalTCN = #clusters.
inline int expected_model_count(StrategyKind k, int n_clusters, int n_postcodes) {
    switch (k) {
    case StrategyKind::Direct:
        return 1;
    case StrategyKind::SubRegionAGG:
        return n_clusters;
    case StrategyKind::PostcodeAGG:
        return n_postcodes;
    case StrategyKind::GlobalTCN:
        return n_clusters;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Hyper-parameters
// ---------------------------------------------------------------------------

struct HyperParams {
    int lag_days = 7;

    // TCN family
    int filters = 16;
    int kernel = 3;
    int max_dilation_exp = 1;
    int tcn_blocks = 1;
    double dropout = 0.1;

    // HTCNN
    int filters_individual = 16; // F'
    int filters_aggregate = 8;   // F''
    int concat_stages = 2;       // A2 only

    // CNN baseline
    int cnn_layers = 1;
    int cnn_filters = 16;
    int cnn_pool = 2;

    // stacked LSTM
    int lstm_cell_dim = 24;
    int lstm_layers = 1;

    // seasonal linear AR
    int ar_lags = 7;
    double ar_lambda = 1e-4;

    nn::TrainConfig train;

    static const std::vector<std::string>& known_keys() {
        static const std::vector<std::string> keys = {
            "lag_days",      "filters",        "kernel",
            "max_dilation_exp", "tcn_blocks",  "dropout",
            "filters_individual", "filters_aggregate", "concat_stages",
            "cnn_layers",    "cnn_filters",    "cnn_pool",
            "lstm_cell_dim", "lstm_layers",    "ar_lags",
            "ar_lambda",     "epochs",         "batch_size",
            "learning_rate", "patience",       "val_fraction"};
        return keys;
    }

    static HyperParams from_config(const KeyValueConfig& kv) {
        kv.require_known(known_keys(), "hyper config");
        HyperParams h;
        h.lag_days = static_cast<int>(kv.get_long("lag_days", h.lag_days));
        h.filters = static_cast<int>(kv.get_long("filters", h.filters));
        h.kernel = static_cast<int>(kv.get_long("kernel", h.kernel));
        h.max_dilation_exp =
            static_cast<int>(kv.get_long("max_dilation_exp", h.max_dilation_exp));
        h.tcn_blocks = static_cast<int>(kv.get_long("tcn_blocks", h.tcn_blocks));
        h.dropout = kv.get_double("dropout", h.dropout);
        h.filters_individual = static_cast<int>(
            kv.get_long("filters_individual", h.filters_individual));
        h.filters_aggregate = static_cast<int>(
            kv.get_long("filters_aggregate", h.filters_aggregate));
        h.concat_stages =
            static_cast<int>(kv.get_long("concat_stages", h.concat_stages));
        h.cnn_layers = static_cast<int>(kv.get_long("cnn_layers", h.cnn_layers));
        h.cnn_filters = static_cast<int>(kv.get_long("cnn_filters", h.cnn_filters));
        h.cnn_pool = static_cast<int>(kv.get_long("cnn_pool", h.cnn_pool));
        h.lstm_cell_dim =
            static_cast<int>(kv.get_long("lstm_cell_dim", h.lstm_cell_dim));
        h.lstm_layers = static_cast<int>(kv.get_long("lstm_layers", h.lstm_layers));
        h.ar_lags = static_cast<int>(kv.get_long("ar_lags", h.ar_lags));
        h.ar_lambda = kv.get_double("ar_lambda", h.ar_lambda);
        h.train.max_epochs =
            static_cast<int>(kv.get_long("epochs", h.train.max_epochs));
        h.train.batch_size =
            static_cast<int>(kv.get_long("batch_size", h.train.batch_size));
        h.train.learning_rate = kv.get_double("learning_rate", h.train.learning_rate);
        h.train.patience = static_cast<int>(kv.get_long("patience", h.train.patience));
        h.train.val_fraction = kv.get_double("val_fraction", h.train.val_fraction);
        return h;
    }

    nlohmann::json to_json() const {
        return {{"lag_days", lag_days},
                {"filters", filters},
                {"kernel", kernel},
                {"max_dilation_exp", max_dilation_exp},
                {"tcn_blocks", tcn_blocks},
                {"dropout", dropout},
                {"filters_individual", filters_individual},
                {"filters_aggregate", filters_aggregate},
                {"concat_stages", concat_stages},
                {"cnn_layers", cnn_layers},
                {"cnn_filters", cnn_filters},
                {"cnn_pool", cnn_pool},
                {"lstm_cell_dim", lstm_cell_dim},
                {"lstm_layers", lstm_layers},
                {"ar_lags", ar_lags},
                {"ar_lambda", ar_lambda},
                {"epochs", train.max_epochs},
                {"batch_size", train.batch_size},
                {"learning_rate", train.learning_rate},
                {"patience", train.patience},
                {"val_fraction", train.val_fraction}};
    }
};

// ---------------------------------------------------------------------------
// Strategy plans
// ---------------------------------------------------------------------------

// One trainable component: a target series, the non-target input series, and
// (GlobalTCN) the postcodes pooled into the shared network.
struct ComponentTask {
    std::string key;
    data::SeriesId target;
    std::vector<data::SeriesId> inputs;
    std::vector<std::string> pooled_postcodes;
};

inline std::vector<ComponentTask> strategy_plan(StrategyKind kind,
                                                ModelFamily family,
                                                const data::RegionalDataset& ds) {
    require_compatible(kind, family);
    bool htcnn = family == ModelFamily::HtcnnA1 || family == ModelFamily::HtcnnA2;
    std::vector<ComponentTask> plan;
    switch (kind) {
    case StrategyKind::Direct: {
        ComponentTask t;
        t.key = "region";
        t.target = {data::SeriesKind::Regional, "region"};
        if (htcnn)
            for (const auto& p : ds.postcodes)
                t.inputs.push_back(p.id);
        plan.push_back(std::move(t));
        break;
    }
    case StrategyKind::SubRegionAGG: {
        for (int c = 0; c < ds.n_clusters(); ++c) {
            ComponentTask t;
            t.key = "cluster" + std::to_string(c);
            t.target = ds.subregion_aggregates[static_cast<std::size_t>(c)].id;
            for (int p : ds.cluster_members(c))
                t.inputs.push_back(ds.postcodes[static_cast<std::size_t>(p)].id);
            plan.push_back(std::move(t));
        }
        break;
    }
    case StrategyKind::PostcodeAGG: {
        for (const auto& p : ds.postcodes) {
            ComponentTask t;
            t.key = p.id.key;
            t.target = p.id;
            plan.push_back(std::move(t));
        }
        break;
    }
    case StrategyKind::GlobalTCN: {
        for (int c = 0; c < ds.n_clusters(); ++c) {
            ComponentTask t;
            t.key = "cluster" + std::to_string(c);
            t.target = ds.subregion_aggregates[static_cast<std::size_t>(c)].id;
            for (int p : ds.cluster_members(c))
                t.pooled_postcodes.push_back(
                    ds.postcodes[static_cast<std::size_t>(p)].id.key);
            plan.push_back(std::move(t));
        }
        break;
    }
    }
    return plan;
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

// Dataset + split + scalers + the standardised copy, shared by every
// component of a run.
struct DataContext {
    const data::RegionalDataset* raw = nullptr;
    data::SplitDays split;
    data::DatasetScalers scalers;
    data::RegionalDataset scaled;

    static DataContext make(const data::RegionalDataset& ds, int test_days) {
        DataContext ctx;
        ctx.raw = &ds;
        ctx.split = data::train_test_split(ds.n_days(), test_days);
        ctx.scalers = data::fit_scalers(ds, ctx.split.train);
        ctx.scaled = data::apply_scalers(ds, ctx.scalers);
        return ctx;
    }
};

struct TrainedComponent {
    ComponentTask task;
    std::optional<nn::Network> net;
    nlohmann::json net_spec;
    nn::TrainResult history;
    std::optional<SeasonalLinearAr> ar;
    bool trained = false;
};

struct StrategyModel {
    StrategyKind kind = StrategyKind::Direct;
    ModelFamily family = ModelFamily::SeasonalNaive;
    HyperParams hyper;
    std::uint64_t seed = 0;
    std::vector<TrainedComponent> components;

    int model_count() const { return static_cast<int>(components.size()); }
};

namespace detail {

inline nn::Tensor to_tensor(const data::FeatureMatrix& m) {
    nn::Tensor t = nn::Tensor::matrix(m.rows, m.cols);
    t.values = m.values;
    return t;
}

inline data::FeatureMatrix augment_one_hot(const data::FeatureMatrix& m,
                                           std::size_t index, std::size_t count) {
    data::FeatureMatrix out(m.rows, m.cols + count);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c)
            out.at(r, c) = m.at(r, c);
        out.at(r, m.cols + index) = 1.0;
    }
    return out;
}

inline std::vector<nn::TrainSample> nn_samples(const DataContext& ctx,
                                               const ComponentTask& task,
                                               const HyperParams& hyper) {
    std::vector<nn::TrainSample> out;
    data::SampleSet set = data::make_samples(
        ctx.scaled, task.target, task.inputs, hyper.lag_days, data::kSlotsPerDay,
        0, ctx.split.train.end, /*append_target_matrix=*/true);
    for (auto& s : set.samples) {
        nn::TrainSample ts;
        for (auto& m : s.inputs)
            ts.inputs.push_back(to_tensor(m));
        ts.target = nn::Tensor::vector(s.target.size());
        ts.target.values = s.target;
        out.push_back(std::move(ts));
    }
    return out;
}

// GlobalTCN training set: per-postcode samples augmented with the postcode's
// one-hot identity column block, pooled across the cluster in postcode-major
// order.
inline std::vector<nn::TrainSample> global_tcn_samples(const DataContext& ctx,
                                                       const ComponentTask& task,
                                                       const HyperParams& hyper) {
    std::vector<nn::TrainSample> out;
    std::size_t n = task.pooled_postcodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        data::SeriesId id{data::SeriesKind::Postcode, task.pooled_postcodes[i]};
        data::SampleSet set =
            data::make_samples(ctx.scaled, id, {}, hyper.lag_days,
                               data::kSlotsPerDay, 0, ctx.split.train.end, true);
        for (auto& s : set.samples) {
            nn::TrainSample ts;
            ts.inputs.push_back(to_tensor(augment_one_hot(s.inputs[0], i, n)));
            ts.target = nn::Tensor::vector(s.target.size());
            ts.target.values = s.target;
            out.push_back(std::move(ts));
        }
    }
    return out;
}

inline int feature_width(const data::SeriesId& id, const HyperParams& hyper) {
    return hyper.lag_days +
           (id.kind == data::SeriesKind::Postcode ? data::kWeatherFeatures : 0);
}

// Network spec for one component; input widths derive from the task shape.
inline nlohmann::json component_spec(ModelFamily family,
                                     const ComponentTask& task,
                                     const HyperParams& hyper) {
    int t = data::kSlotsPerDay;
    switch (family) {
    case ModelFamily::HtcnnA1:
    case ModelFamily::HtcnnA2: {
        nn::HtcnnSpec s;
        s.variant = family == ModelFamily::HtcnnA1 ? nn::HtcnnVariant::A1
                                                   : nn::HtcnnVariant::A2;
        s.n_individual = static_cast<int>(task.inputs.size());
        s.t = t;
        s.f = hyper.lag_days + data::kWeatherFeatures;
        s.f_agg = hyper.lag_days;
        s.horizon = t;
        s.filters_individual = hyper.filters_individual;
        s.filters_aggregate = hyper.filters_aggregate;
        s.max_dilation_exp = hyper.max_dilation_exp;
        s.kernel = hyper.kernel;
        s.concat_stages = hyper.concat_stages;
        s.dropout = hyper.dropout;
        s.tcn_blocks_individual = hyper.tcn_blocks;
        s.tcn_blocks_aggregate = hyper.tcn_blocks;
        return s;
    }
    case ModelFamily::Tcn: {
        nn::TcnSpec s;
        s.t = t;
        s.f = task.pooled_postcodes.empty()
                  ? feature_width(task.target, hyper)
                  : hyper.lag_days + data::kWeatherFeatures +
                        static_cast<int>(task.pooled_postcodes.size());
        s.horizon = t;
        s.filters = hyper.filters;
        s.kernel = hyper.kernel;
        s.max_dilation_exp = hyper.max_dilation_exp;
        s.n_blocks = hyper.tcn_blocks;
        s.dropout = hyper.dropout;
        return s;
    }
    case ModelFamily::Cnn: {
        nn::CnnSpec s;
        s.t = t;
        s.f = feature_width(task.target, hyper);
        s.horizon = t;
        s.layers = hyper.cnn_layers;
        s.filters = hyper.cnn_filters;
        s.kernel = hyper.kernel;
        s.pool = hyper.cnn_pool;
        return s;
    }
    case ModelFamily::Lstm: {
        nn::LstmSpec s;
        s.t = t;
        s.f = feature_width(task.target, hyper);
        s.horizon = t;
        s.cell_dim = hyper.lstm_cell_dim;
        s.layers = hyper.lstm_layers;
        return s;
    }
    default:
        throw UsageError("component_spec: family has no network");
    }
}

} // namespace detail

inline bool family_needs_training(ModelFamily f) {
    return f != ModelFamily::SeasonalNaive;
}

inline bool family_has_network(ModelFamily f) {
    return f == ModelFamily::Lstm || f == ModelFamily::Cnn ||
           f == ModelFamily::Tcn || f == ModelFamily::HtcnnA1 ||
           f == ModelFamily::HtcnnA2;
}

// Trains one component; deterministic in (ctx, task, hyper, seed).
inline TrainedComponent train_component(const DataContext& ctx,
                                        const ComponentTask& task,
                                        ModelFamily family,
                                        const HyperParams& hyper,
                                        std::uint64_t seed) {
    TrainedComponent out;
    out.task = task;
    if (family == ModelFamily::SeasonalNaive) {
        out.trained = true;
        return out;
    }
    if (family == ModelFamily::LinearAr || family == ModelFamily::LinearArX) {
        const data::PowerSeries& series = ctx.raw->series(task.target);
        const data::WeatherSeries* weather =
            family == ModelFamily::LinearArX ? ctx.raw->weather_for(task.target)
                                             : nullptr;
        if (family == ModelFamily::LinearArX && weather == nullptr)
            throw ConfigError("slrx requires a postcode target (weather-mapped)");
        out.ar = fit_seasonal_linear_ar(series, weather, ctx.split.train,
                                        hyper.ar_lags, hyper.ar_lambda);
        out.trained = true;
        return out;
    }
    nlohmann::json spec = detail::component_spec(family, task, hyper);
    out.net_spec = spec;
    out.net = nn::build_from_spec_json(spec, seed);
    std::vector<nn::TrainSample> samples =
        task.pooled_postcodes.empty() ? detail::nn_samples(ctx, task, hyper)
                                      : detail::global_tcn_samples(ctx, task, hyper);
    nn::TrainConfig tc = hyper.train;
    tc.seed = seed;
    out.history = nn::train(*out.net, samples, tc);
    out.trained = true;
    return out;
}

// Trains the full strategy; independent components may run on up to `jobs`
// threads (they share only the immutable DataContext).
inline StrategyModel train_strategy(const DataContext& ctx, StrategyKind kind,
                                    ModelFamily family, const HyperParams& hyper,
                                    std::uint64_t seed, int jobs = 1) {
    StrategyModel model;
    model.kind = kind;
    model.family = family;
    model.hyper = hyper;
    model.seed = seed;
    std::vector<ComponentTask> plan = strategy_plan(kind, family, *ctx.raw);
    model.components.resize(plan.size());
    auto run_one = [&](std::size_t i) {
        std::uint64_t cseed = derive_seed(seed, plan[i].key);
        model.components[i] =
            train_component(ctx, plan[i], family, hyper, cseed);
    };
    int workers = std::max(1, std::min<int>(jobs, static_cast<int>(plan.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < plan.size(); ++i)
            run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= plan.size())
                        return;
                    try {
                        run_one(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!error)
                            error = std::current_exception();
                    }
                }
            });
        for (auto& t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }
    return model;
}

// ---------------------------------------------------------------------------
// Forecasting
// ---------------------------------------------------------------------------

// Regional day-ahead forecast; for aggregating strategies the regional values
// are exactly the componentwise sum of the per-component forecasts.
struct RegionalForecast {
    int day = 0;
    std::vector<double> values; // kW, clamped >= 0 per component
    std::vector<std::pair<std::string, std::vector<double>>> components;
};

namespace detail {

inline std::vector<double> forecast_network(const DataContext& ctx,
                                            TrainedComponent& comp,
                                            const HyperParams& hyper, int day) {
    std::vector<nn::Tensor> inputs;
    for (const auto& id : comp.task.inputs)
        inputs.push_back(to_tensor(data::build_feature_matrix(
            ctx.scaled.series(id), ctx.scaled.weather_for(id), day,
            hyper.lag_days)));
    inputs.push_back(to_tensor(data::build_feature_matrix(
        ctx.scaled.series(comp.task.target),
        ctx.scaled.weather_for(comp.task.target), day, hyper.lag_days)));
    nn::Tensor out = comp.net->forward(inputs);
    const data::Scaler& sc = ctx.scalers.for_series(*ctx.raw, comp.task.target);
    std::vector<double> kw(out.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        kw[i] = std::max(0.0, sc.invert(out[i]));
    return kw;
}

// Global TCN: one forward per pooled postcode, unscaled per postcode, then
// summed into the cluster component.
inline std::vector<double> forecast_global(const DataContext& ctx,
                                           TrainedComponent& comp,
                                           const HyperParams& hyper, int day) {
    std::size_t n = comp.task.pooled_postcodes.size();
    std::vector<double> sum(data::kSlotsPerDay, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        data::SeriesId id{data::SeriesKind::Postcode, comp.task.pooled_postcodes[i]};
        data::FeatureMatrix m = data::build_feature_matrix(
            ctx.scaled.series(id), ctx.scaled.weather_for(id), day, hyper.lag_days);
        std::vector<nn::Tensor> inputs{to_tensor(augment_one_hot(m, i, n))};
        nn::Tensor out = comp.net->forward(inputs);
        const data::Scaler& sc = ctx.scalers.for_series(*ctx.raw, id);
        for (std::size_t s = 0; s < sum.size(); ++s)
            sum[s] += std::max(0.0, sc.invert(out[s]));
    }
    return sum;
}

} // namespace detail

// Network forwards refresh per-layer activation caches, so forecasting takes
// the model by mutable reference; use one StrategyModel per thread.
inline std::vector<double> forecast_component(const DataContext& ctx,
                                              StrategyModel& model,
                                              TrainedComponent& comp,
                                              int day) {
    if (!comp.trained)
        throw UsageError("forecast: component '" + comp.task.key +
                         "' is untrained");
    switch (model.family) {
    case ModelFamily::SeasonalNaive:
        return seasonal_naive(ctx.raw->series(comp.task.target), day);
    case ModelFamily::LinearAr:
    case ModelFamily::LinearArX: {
        const data::WeatherSeries* weather =
            model.family == ModelFamily::LinearArX
                ? ctx.raw->weather_for(comp.task.target)
                : nullptr;
        std::vector<double> out = linear_ar_forecast(
            *comp.ar, ctx.raw->series(comp.task.target), weather, day);
        for (auto& v : out)
            v = std::max(0.0, v);
        return out;
    }
    default:
        if (!comp.task.pooled_postcodes.empty())
            return detail::forecast_global(ctx, comp, model.hyper, day);
        return detail::forecast_network(ctx, comp, model.hyper, day);
    }
}

inline RegionalForecast forecast_day(const DataContext& ctx,
                                     StrategyModel& model, int day) {
    if (day < 0 || day >= ctx.raw->n_days())
        throw DataError("forecast: day " + std::to_string(day) +
                        " outside the dataset (0.." +
                        std::to_string(ctx.raw->n_days() - 1) + ")");
    RegionalForecast fc;
    fc.day = day;
    fc.values.assign(data::kSlotsPerDay, 0.0);
    for (auto& comp : model.components) {
        std::vector<double> v = forecast_component(ctx, model, comp, day);
        for (std::size_t s = 0; s < v.size(); ++s)
            fc.values[s] += v[s];
        fc.components.emplace_back(comp.task.key, std::move(v));
    }
    return fc;
}

} // namespace solarcast::fc
