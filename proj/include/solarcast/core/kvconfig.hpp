#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "solarcast/core/csv.hpp"
#include "solarcast/core/errors.hpp"

namespace solarcast {

// Plain-text config: one `key = value` per line, '#' starts a comment.
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig parse_text(const std::string& text,
                                     const std::string& where) {
        KeyValueConfig cfg;
        std::size_t lineno = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::string line = text.substr(
                pos, nl == std::string::npos ? std::string::npos : nl - pos);
            pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(where + ":" + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + line + "'");
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError(where + ":" + std::to_string(lineno) +
                                  ": empty key");
            cfg.values_[key] = value;
            cfg.order_.push_back(key);
        }
        return cfg;
    }

    static KeyValueConfig parse_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file " + path.string());
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        return parse_text(text, path.string());
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, std::string fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        return it == values_.end()
                   ? fallback
                   : parse_double(it->second, "config key '" + key + "'");
    }

    long get_long(const std::string& key, long fallback) const {
        auto it = values_.find(key);
        return it == values_.end()
                   ? fallback
                   : parse_long(it->second, "config key '" + key + "'");
    }

    const std::map<std::string, std::string>& entries() const { return values_; }

    // Rejects keys outside the known set; catches typos in config files.
    void require_known(const std::vector<std::string>& known,
                       const std::string& where) const {
        for (const auto& [k, v] : values_) {
            (void)v;
            bool ok = false;
            for (const auto& kn : known)
                if (k == kn)
                    ok = true;
            if (!ok)
                throw ConfigError(where + ": unknown config key '" + k + "'");
        }
    }

    std::string dump() const {
        std::string out;
        for (const auto& [k, v] : values_)
            out += k + " = " + v + "\n";
        return out;
    }

private:
    static std::string trim(const std::string& s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            return "";
        std::size_t e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
};

} // namespace solarcast
