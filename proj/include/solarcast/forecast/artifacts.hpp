#pragma once

#include <filesystem>
#include <fstream>

#include "solarcast/forecast/strategies.hpp"
#include "solarcast/nn/params_io.hpp"

namespace solarcast::fc {

namespace fs = std::filesystem;

// Model directory layout (one strategy run):
//   model.json          strategy, family, seed, test days, dataset hash,
//                       hyper-parameters, ordered component keys
//   <key>.json          per-component sidecar: family, seed, network spec
//                       (nn families) or AR shape (slr/slrx)
//   <key>.params        flat binary parameters (absent for SN)
//   <key>.loss.csv      per-epoch train/validation loss (nn families)

inline nlohmann::json series_id_json(const data::SeriesId& id) {
    return {{"kind", std::string(data::to_string(id.kind))}, {"key", id.key}};
}

inline data::SeriesId series_id_from_json(const nlohmann::json& j) {
    std::string kind = j.at("kind").get<std::string>();
    data::SeriesId id;
    id.key = j.at("key").get<std::string>();
    if (kind == "postcode")
        id.kind = data::SeriesKind::Postcode;
    else if (kind == "subregion")
        id.kind = data::SeriesKind::SubRegion;
    else if (kind == "regional")
        id.kind = data::SeriesKind::Regional;
    else
        throw DataError("bad series kind '" + kind + "' in model file");
    return id;
}

inline std::vector<double> flatten_ar(const SeasonalLinearAr& ar) {
    std::vector<double> out;
    for (const auto& slot : ar.coef)
        out.insert(out.end(), slot.begin(), slot.end());
    return out;
}

inline void save_strategy_model(const StrategyModel& model, const fs::path& dir,
                                const std::string& dataset_hash, int test_days) {
    fs::create_directories(dir);
    nlohmann::json components = nlohmann::json::array();
    for (const auto& comp : model.components) {
        nlohmann::json cj = {{"key", comp.task.key},
                             {"target", series_id_json(comp.task.target)},
                             {"inputs", nlohmann::json::array()},
                             {"pooled_postcodes", comp.task.pooled_postcodes}};
        for (const auto& id : comp.task.inputs)
            cj["inputs"].push_back(series_id_json(id));
        components.push_back(cj);

        nlohmann::json sidecar = {{"family", std::string(to_string(model.family))},
                                  {"seed", model.seed},
                                  {"component", comp.task.key}};
        if (comp.net) {
            sidecar["spec"] = comp.net_spec;
            std::uint64_t hash = nn::spec_hash(comp.net_spec);
            nn::save_params(dir / (comp.task.key + ".params"),
                            const_cast<nn::Network&>(*comp.net).param_values(),
                            hash);
            std::string hist = "epoch,train_mse,val_mse\n";
            for (std::size_t e = 0; e < comp.history.train_loss.size(); ++e)
                hist += std::to_string(e) + "," +
                        format_double(comp.history.train_loss[e]) + "," +
                        format_double(comp.history.val_loss[e]) + "\n";
            write_file_atomic(dir / (comp.task.key + ".loss.csv"), hist);
        } else if (comp.ar) {
            nlohmann::json spec = {{"kind", comp.ar->use_weather ? "slrx" : "slr"},
                                   {"lags", comp.ar->lags},
                                   {"lambda", comp.ar->lambda}};
            sidecar["spec"] = spec;
            nn::save_params(dir / (comp.task.key + ".params"), flatten_ar(*comp.ar),
                            nn::spec_hash(spec));
        }
        write_file_atomic(dir / (comp.task.key + ".json"), sidecar.dump(2) + "\n");
    }
    nlohmann::json mj = {{"strategy", std::string(to_string(model.kind))},
                         {"family", std::string(to_string(model.family))},
                         {"seed", model.seed},
                         {"test_days", test_days},
                         {"dataset_hash", dataset_hash},
                         {"hyper", model.hyper.to_json()},
                         {"components", components}};
    write_file_atomic(dir / "model.json", mj.dump(2) + "\n");
}

struct LoadedModel {
    StrategyModel model;
    int test_days = 36;
    std::string dataset_hash;
};

inline nlohmann::json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return j;
}

inline LoadedModel load_strategy_model(const fs::path& dir) {
    nlohmann::json mj = read_json_file(dir / "model.json");
    LoadedModel out;
    out.model.kind = parse_strategy(mj.at("strategy").get<std::string>());
    out.model.family = parse_family(mj.at("family").get<std::string>());
    out.model.seed = mj.at("seed").get<std::uint64_t>();
    out.test_days = mj.at("test_days").get<int>();
    out.dataset_hash = mj.at("dataset_hash").get<std::string>();
    {
        // hyper round trip via the kv text form keeps one parse path
        KeyValueConfig kv;
        std::string text;
        for (auto it = mj.at("hyper").begin(); it != mj.at("hyper").end(); ++it) {
            text += it.key() + " = ";
            if (it->is_number_float())
                text += format_double(it->get<double>());
            else
                text += it->dump();
            text += "\n";
        }
        out.model.hyper = HyperParams::from_config(
            KeyValueConfig::parse_text(text, (dir / "model.json").string()));
    }
    for (const auto& cj : mj.at("components")) {
        TrainedComponent comp;
        comp.task.key = cj.at("key").get<std::string>();
        comp.task.target = series_id_from_json(cj.at("target"));
        for (const auto& ij : cj.at("inputs"))
            comp.task.inputs.push_back(series_id_from_json(ij));
        cj.at("pooled_postcodes").get_to(comp.task.pooled_postcodes);

        if (family_has_network(out.model.family)) {
            nlohmann::json sidecar = read_json_file(dir / (comp.task.key + ".json"));
            nlohmann::json spec = sidecar.at("spec");
            comp.net_spec = spec;
            comp.net = nn::build_from_spec_json(spec, out.model.seed);
            std::vector<double> values = nn::load_params(
                dir / (comp.task.key + ".params"), nn::spec_hash(spec));
            comp.net->set_param_values(values);
        } else if (out.model.family == ModelFamily::LinearAr ||
                   out.model.family == ModelFamily::LinearArX) {
            nlohmann::json sidecar = read_json_file(dir / (comp.task.key + ".json"));
            nlohmann::json spec = sidecar.at("spec");
            SeasonalLinearAr ar;
            ar.lags = spec.at("lags").get<int>();
            ar.use_weather = spec.at("kind").get<std::string>() == "slrx";
            ar.lambda = spec.at("lambda").get<double>();
            std::vector<double> flat = nn::load_params(
                dir / (comp.task.key + ".params"), nn::spec_hash(spec));
            std::size_t width = 1 + static_cast<std::size_t>(ar.lags) +
                                (ar.use_weather ? data::kWeatherFeatures : 0);
            if (flat.size() != width * data::kSlotsPerDay)
                throw DataError(comp.task.key +
                                ".params: unexpected coefficient count");
            for (int s = 0; s < data::kSlotsPerDay; ++s)
                ar.coef.emplace_back(flat.begin() + s * width,
                                     flat.begin() + (s + 1) * width);
            comp.ar = std::move(ar);
        }
        comp.trained = true;
        out.model.components.push_back(std::move(comp));
    }
    return out;
}

} // namespace solarcast::fc
