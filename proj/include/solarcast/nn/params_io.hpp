#pragma once

#include <cstring>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "solarcast/core/csv.hpp"
#include "solarcast/core/rng.hpp"
#include "solarcast/nn/network.hpp"

namespace solarcast::nn {

// Trained parameters live in a flat binary file: 8 magic bytes, the FNV-1a
// hash of the sidecar spec JSON, a count, then little-endian doubles in
// parameter declaration order. The JSON sidecar next to it records the
// network spec and seed.
constexpr char kParamMagic[8] = {'S', 'O', 'L', 'C', 'P', 'R', 'M', '1'};

inline std::uint64_t spec_hash(const nlohmann::json& spec) {
    return fnv1a64(spec.dump());
}

inline void save_params(const std::filesystem::path& path,
                        const std::vector<double>& values,
                        std::uint64_t hash) {
    std::string blob;
    blob.reserve(24 + values.size() * 8);
    blob.append(kParamMagic, 8);
    auto put_u64 = [&blob](std::uint64_t v) {
        char b[8];
        for (int i = 0; i < 8; ++i)
            b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
        blob.append(b, 8);
    };
    put_u64(hash);
    put_u64(values.size());
    for (double d : values) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, 8);
        put_u64(bits);
    }
    write_file_atomic(path, blob);
}

inline std::vector<double> load_params(const std::filesystem::path& path,
                                       std::uint64_t expected_hash) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open parameter file " + path.string());
    std::string blob((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (blob.size() < 24 || std::memcmp(blob.data(), kParamMagic, 8) != 0)
        throw DataError(path.string() + ": not a parameter file");
    auto get_u64 = [&blob](std::size_t off) {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(
                     static_cast<unsigned char>(blob[off + i]))
                 << (8 * i);
        return v;
    };
    std::uint64_t hash = get_u64(8);
    if (hash != expected_hash)
        throw DataError(path.string() +
                        ": parameter file does not match the network spec");
    std::uint64_t count = get_u64(16);
    if (blob.size() != 24 + count * 8)
        throw DataError(path.string() + ": truncated parameter file");
    std::vector<double> values(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t bits = get_u64(24 + i * 8);
        std::memcpy(&values[i], &bits, 8);
    }
    return values;
}

} // namespace solarcast::nn
