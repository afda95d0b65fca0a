// solarcast CLI: generate synthetic regional PV datasets, train forecasting
// strategies, produce day-ahead regional forecasts, evaluate them, and grid
// search hyper-parameters.
//
// Exit codes: 0 success, 1 usage/configuration error, 2 data error,
// 3 numerical failure.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "solarcast/solarcast.hpp"

namespace fs = std::filesystem;
using namespace solarcast;

namespace {

std::uint64_t file_hash(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string blob((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return fnv1a64(blob);
}

// One JSON line per run, appended to <dir>/manifest.jsonl.
void append_manifest(const fs::path& dir, const std::string& command,
                     const nlohmann::json& config,
                     const std::string& dataset_hash,
                     const std::vector<std::uint64_t>& seeds,
                     const std::vector<fs::path>& artifacts, double wall_ms) {
    nlohmann::json arts = nlohmann::json::array();
    for (const auto& p : artifacts) {
        char h[17];
        std::snprintf(h, sizeof(h), "%016llx",
                      static_cast<unsigned long long>(file_hash(p)));
        arts.push_back({{"path", p.filename().string()}, {"fnv64", h}});
    }
    nlohmann::json line = {{"command", command},  {"config", config},
                           {"dataset_hash", dataset_hash}, {"seeds", seeds},
                           {"artifacts", arts},   {"wall_ms", wall_ms}};
    fs::create_directories(dir);
    std::ofstream out(dir / "manifest.jsonl", std::ios::app);
    out << line.dump() << "\n";
}

std::vector<fs::path> dir_artifacts(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().filename() != "manifest.jsonl")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

void print_compatibility_matrix() {
    using fc::ModelFamily;
    using fc::StrategyKind;
    const StrategyKind kinds[] = {StrategyKind::Direct, StrategyKind::PostcodeAGG,
                                  StrategyKind::SubRegionAGG,
                                  StrategyKind::GlobalTCN};
    const ModelFamily families[] = {
        ModelFamily::SeasonalNaive, ModelFamily::LinearAr, ModelFamily::LinearArX,
        ModelFamily::Lstm,          ModelFamily::Cnn,      ModelFamily::Tcn,
        ModelFamily::HtcnnA1,       ModelFamily::HtcnnA2};
    std::printf("%-14s", "strategy");
    for (auto f : families)
        std::printf("%-10s", std::string(fc::to_string(f)).c_str());
    std::printf("\n");
    for (auto k : kinds) {
        std::printf("%-14s", std::string(fc::to_string(k)).c_str());
        for (auto f : families)
            std::printf("%-10s", fc::compatible(k, f) ? "yes" : "-");
        std::printf("\n");
    }
    std::printf("\nmodel count: direct=1, subregion-agg=#clusters, "
                "postcode-agg=#postcodes, global-tcn=#clusters\n");
}

int cmd_gen_data(const std::string& config_path, const fs::path& out,
                 long seed_override) {
    auto t0 = std::chrono::steady_clock::now();
    KeyValueConfig kv;
    if (!config_path.empty())
        kv = KeyValueConfig::parse_file(config_path);
    data::GeneratorConfig cfg = data::GeneratorConfig::from_config(kv);
    if (seed_override >= 0)
        cfg.seed = static_cast<std::uint64_t>(seed_override);
    data::RegionalDataset ds = data::generate_region(cfg);
    data::emit_dataset(ds, out);
    write_file_atomic(out / "manifest.txt", cfg.echo());
    std::string hash = data::dataset_hash(out);
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    append_manifest(out, "gen-data",
                    KeyValueConfig::parse_text(cfg.echo(), "generator").entries(),
                    hash, {cfg.seed}, dir_artifacts(out), ms);
    std::printf("dataset: %d postcodes, %d clusters, %d days -> %s (hash %s)\n",
                ds.n_postcodes(), ds.n_clusters(), ds.n_days(),
                out.string().c_str(), hash.c_str());
    return 0;
}

int cmd_train(const fs::path& data_dir, const std::string& strategy,
              const std::string& family, const std::string& hyper_path,
              int test_days, long seed, int jobs, const fs::path& out) {
    auto t0 = std::chrono::steady_clock::now();
    fc::StrategyKind kind = fc::parse_strategy(strategy);
    fc::ModelFamily fam = fc::parse_family(family);
    fc::require_compatible(kind, fam);
    fc::HyperParams hyper;
    if (!hyper_path.empty())
        hyper = fc::HyperParams::from_config(KeyValueConfig::parse_file(hyper_path));
    data::RegionalDataset ds = data::load_dataset(data_dir);
    std::string hash = data::dataset_hash(data_dir);
    fc::DataContext ctx = fc::DataContext::make(ds, test_days);
    fc::StrategyModel model = fc::train_strategy(
        ctx, kind, fam, hyper, static_cast<std::uint64_t>(seed), jobs);
    fc::save_strategy_model(model, out, hash, test_days);
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    append_manifest(out, "train",
                    {{"strategy", strategy},
                     {"model", family},
                     {"test_days", test_days},
                     {"hyper", hyper.to_json()}},
                    hash, {static_cast<std::uint64_t>(seed)}, dir_artifacts(out),
                    ms);
    std::printf("trained %d model(s) for %s.%s -> %s\n", model.model_count(),
                strategy.c_str(), family.c_str(), out.string().c_str());
    return 0;
}

int cmd_forecast(const fs::path& models_dir, const fs::path& data_dir,
                 int from_day, int to_day, const fs::path& out_csv) {
    auto t0 = std::chrono::steady_clock::now();
    fc::LoadedModel loaded = fc::load_strategy_model(models_dir);
    data::RegionalDataset ds = data::load_dataset(data_dir);
    std::string hash = data::dataset_hash(data_dir);
    if (hash != loaded.dataset_hash)
        throw DataError("stale artifacts: model was trained on dataset " +
                        loaded.dataset_hash + " but " + data_dir.string() +
                        " hashes to " + hash);
    fc::DataContext ctx = fc::DataContext::make(ds, loaded.test_days);
    int begin = from_day >= 0 ? from_day : ctx.split.test.begin;
    int end = to_day >= 0 ? to_day + 1 : ctx.split.test.end;
    if (begin < 0 || end > ds.n_days() || begin >= end)
        throw DataError("forecast range [" + std::to_string(begin) + "," +
                        std::to_string(end) + ") outside the dataset (0.." +
                        std::to_string(ds.n_days() - 1) + ")");
    std::vector<eval::ForecastRecord> records;
    for (int day = begin; day < end; ++day) {
        fc::RegionalForecast fcast = fc::forecast_day(ctx, loaded.model, day);
        for (int slot = 0; slot < data::kSlotsPerDay; ++slot)
            records.push_back({day, slot, ds.regional.at(day, slot),
                               fcast.values[static_cast<std::size_t>(slot)],
                               std::string(fc::to_string(loaded.model.kind)),
                               std::string(fc::to_string(loaded.model.family)),
                               loaded.model.seed});
    }
    fs::path out_dir = out_csv.parent_path().empty() ? fs::path(".")
                                                     : out_csv.parent_path();
    fs::create_directories(out_dir);
    write_file_atomic(out_csv, eval::forecast_csv(records));
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    append_manifest(out_dir, "forecast",
                    {{"models", models_dir.string()},
                     {"from", begin},
                     {"to", end - 1}},
                    hash, {loaded.model.seed}, {out_csv}, ms);
    std::printf("%zu forecast rows -> %s\n", records.size(),
                out_csv.string().c_str());
    return 0;
}

int cmd_evaluate(const std::vector<std::string>& csvs, const fs::path& data_dir,
                 const std::string& reference, const fs::path& out) {
    auto t0 = std::chrono::steady_clock::now();
    data::RegionalDataset ds = data::load_dataset(data_dir);
    std::vector<eval::ForecastRecord> records;
    for (const auto& p : csvs) {
        auto part = eval::read_forecast_csv(p);
        records.insert(records.end(), part.begin(), part.end());
    }
    if (records.empty())
        throw DataError("evaluate: no forecast records");
    // distinct strategy/family pairs, in first-appearance order
    std::vector<eval::RowSpec> specs;
    for (const auto& r : records) {
        bool seen = false;
        for (const auto& s : specs)
            if (s.label() == r.strategy + "." + r.model_family)
                seen = true;
        if (!seen) {
            fc::StrategyKind k = fc::parse_strategy(r.strategy);
            fc::ModelFamily f = fc::parse_family(r.model_family);
            specs.push_back({k, f,
                             fc::expected_model_count(k, ds.n_clusters(),
                                                      ds.n_postcodes()),
                             false});
        }
    }
    eval::EvaluationReport report = eval::compute_report(records, specs, reference);
    fs::create_directories(out);
    write_file_atomic(out / "report.json",
                      eval::report_to_json(report).dump(2) + "\n");
    write_file_atomic(out / "report.txt", eval::report_to_text(report));
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    append_manifest(out, "evaluate",
                    {{"forecasts", csvs}, {"reference", reference}},
                    data::dataset_hash(data_dir), {},
                    {out / "report.json", out / "report.txt"}, ms);
    std::cout << eval::report_to_text(report);
    return 0;
}

int cmd_gridsearch(const fs::path& data_dir, const std::string& strategy,
                   const std::string& family, const std::string& grid_path,
                   const std::string& hyper_path, int test_days, long seed,
                   int jobs, const fs::path& out) {
    auto t0 = std::chrono::steady_clock::now();
    fc::StrategyKind kind = fc::parse_strategy(strategy);
    fc::ModelFamily fam = fc::parse_family(family);
    fc::require_compatible(kind, fam);
    if (!fc::family_has_network(fam))
        throw ConfigError("gridsearch tunes network families only (got '" +
                          family + "')");
    fc::HyperParams base;
    if (!hyper_path.empty())
        base = fc::HyperParams::from_config(KeyValueConfig::parse_file(hyper_path));

    KeyValueConfig grid = KeyValueConfig::parse_file(grid_path);
    grid.require_known(fc::HyperParams::known_keys(), "grid spec");
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    for (const auto& [key, value] : grid.entries()) {
        std::vector<std::string> pts;
        std::string cur;
        for (char c : value + ",") {
            if (c == ',') {
                if (!cur.empty())
                    pts.push_back(cur);
                cur.clear();
            } else if (c != ' ') {
                cur.push_back(c);
            }
        }
        if (pts.empty())
            throw ConfigError("grid axis '" + key + "' has no values");
        axes.emplace_back(key, pts);
    }
    if (axes.empty())
        throw ConfigError("grid spec is empty");

    std::size_t total = 1;
    for (const auto& [k, v] : axes)
        total *= v.size();

    data::RegionalDataset ds = data::load_dataset(data_dir);
    std::string hash = data::dataset_hash(data_dir);
    fc::DataContext ctx = fc::DataContext::make(ds, test_days);

    struct Point {
        std::string config_text;
        double val_loss;
    };
    std::vector<Point> leaderboard;
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        std::string text;
        for (const auto& [key, pts] : axes) {
            text += key + " = " + pts[rem % pts.size()] + "\n";
            rem /= pts.size();
        }
        // overlay the grid point on the base hyper config
        nlohmann::json base_json = base.to_json();
        std::string merged_text;
        for (const auto& [k, v] : base_json.items())
            merged_text += k + " = " +
                           (v.is_number_float() ? format_double(v.get<double>())
                                                : v.dump()) +
                           "\n";
        merged_text += text;
        fc::HyperParams hyper = fc::HyperParams::from_config(
            KeyValueConfig::parse_text(merged_text,
                                       "grid point " + std::to_string(idx)));
        fc::StrategyModel model = fc::train_strategy(
            ctx, kind, fam, hyper, static_cast<std::uint64_t>(seed), jobs);
        double val = 0.0;
        for (const auto& comp : model.components)
            val += comp.history.best_val;
        val /= static_cast<double>(model.components.size());
        leaderboard.push_back({text, val});
        std::printf("point %zu/%zu: val_mse %.6g\n", idx + 1, total, val);
    }

    std::vector<std::size_t> order(leaderboard.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return leaderboard[a].val_loss < leaderboard[b].val_loss;
    });

    fs::create_directories(out);
    std::string board = "rank,val_mse,config\n";
    for (std::size_t r = 0; r < order.size(); ++r) {
        std::string cfg = leaderboard[order[r]].config_text;
        for (auto& c : cfg)
            if (c == '\n')
                c = ';';
        board += std::to_string(r + 1) + "," +
                 format_double(leaderboard[order[r]].val_loss) + "," + cfg + "\n";
    }
    write_file_atomic(out / "leaderboard.csv", board);
    write_file_atomic(out / "best.config", leaderboard[order[0]].config_text);
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    append_manifest(out, "gridsearch",
                    {{"strategy", strategy},
                     {"model", family},
                     {"grid", grid_path},
                     {"points", total}},
                    hash, {static_cast<std::uint64_t>(seed)},
                    {out / "leaderboard.csv", out / "best.config"}, ms);
    std::printf("best point (val_mse %.6g):\n%s",
                leaderboard[order[0]].val_loss,
                leaderboard[order[0]].config_text.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"solarcast: hierarchical TCN regional solar forecasting"};
    app.require_subcommand(0, 1);

    bool list_matrix = false;
    app.add_flag("--list", list_matrix,
                 "print the strategy x model compatibility matrix and exit");

    // gen-data
    auto* gen = app.add_subcommand("gen-data", "generate a synthetic dataset");
    std::string gen_config;
    std::string gen_out;
    long gen_seed = -1;
    gen->add_option("--config", gen_config, "generator key=value config file");
    gen->add_option("--out", gen_out, "output dataset directory")->required();
    gen->add_option("--seed", gen_seed, "override the config seed");

    // train
    auto* train = app.add_subcommand("train", "train one forecasting strategy");
    std::string tr_data, tr_strategy, tr_model, tr_hyper, tr_out;
    int tr_test_days = 36;
    long tr_seed = 0;
    int tr_jobs = 1;
    train->add_option("--data", tr_data, "dataset directory")->required();
    train->add_option("--strategy", tr_strategy,
                      "direct|subregion-agg|postcode-agg|global-tcn")
        ->required();
    train->add_option("--model", tr_model,
                      "sn|slr|slrx|lstm|cnn|tcn|htcnn-a1|htcnn-a2")
        ->required();
    train->add_option("--hyper", tr_hyper, "hyper-parameter key=value file");
    train->add_option("--test-days", tr_test_days, "held-out tail length");
    train->add_option("--seed", tr_seed, "training seed");
    train->add_option("--jobs", tr_jobs, "parallel component trainings");
    train->add_option("--out", tr_out, "model output directory")->required();

    // forecast
    auto* fcst = app.add_subcommand("forecast", "forecast with trained models");
    std::string fc_models, fc_data, fc_out;
    int fc_from = -1, fc_to = -1;
    fcst->add_option("--models", fc_models, "model directory")->required();
    fcst->add_option("--data", fc_data, "dataset directory")->required();
    fcst->add_option("--from", fc_from, "first day index (default: test start)");
    fcst->add_option("--to", fc_to, "last day index (default: test end)");
    fcst->add_option("--out", fc_out, "output forecast CSV path")->required();

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "build the evaluation report");
    std::vector<std::string> ev_csvs;
    std::string ev_data, ev_reference, ev_out;
    ev->add_option("--forecasts", ev_csvs, "forecast CSV files")
        ->required()
        ->expected(-1);
    ev->add_option("--data", ev_data, "dataset directory")->required();
    ev->add_option("--reference", ev_reference,
                   "reference strategy label, e.g. direct.sn")
        ->required();
    ev->add_option("--out", ev_out, "report output directory")->required();

    // gridsearch
    auto* gs = app.add_subcommand("gridsearch", "exhaustive hyper-parameter search");
    std::string gs_data, gs_strategy, gs_model, gs_grid, gs_hyper, gs_out;
    int gs_test_days = 36;
    long gs_seed = 0;
    int gs_jobs = 1;
    gs->add_option("--data", gs_data, "dataset directory")->required();
    gs->add_option("--strategy", gs_strategy, "strategy")->required();
    gs->add_option("--model", gs_model, "model family")->required();
    gs->add_option("--grid", gs_grid, "grid file: key = v1,v2,...")->required();
    gs->add_option("--hyper", gs_hyper, "base hyper-parameter file");
    gs->add_option("--test-days", gs_test_days, "held-out tail length");
    gs->add_option("--seed", gs_seed, "training seed");
    gs->add_option("--jobs", gs_jobs, "parallel component trainings");
    gs->add_option("--out", gs_out, "search output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_matrix) {
            print_compatibility_matrix();
            return 0;
        }
        if (gen->parsed())
            return cmd_gen_data(gen_config, gen_out, gen_seed);
        if (train->parsed())
            return cmd_train(tr_data, tr_strategy, tr_model, tr_hyper,
                             tr_test_days, tr_seed, tr_jobs, tr_out);
        if (fcst->parsed())
            return cmd_forecast(fc_models, fc_data, fc_from, fc_to, fc_out);
        if (ev->parsed())
            return cmd_evaluate(ev_csvs, ev_data, ev_reference, ev_out);
        if (gs->parsed())
            return cmd_gridsearch(gs_data, gs_strategy, gs_model, gs_grid,
                                  gs_hyper, gs_test_days, gs_seed, gs_jobs,
                                  gs_out);
        std::cout << app.help();
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
