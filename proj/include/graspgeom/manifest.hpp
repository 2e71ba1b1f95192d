#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "graspgeom/errors.hpp"
#include "graspgeom/serialization.hpp"
#include "graspgeom/version.hpp"

namespace graspgeom {

// FNV-1a over raw file bytes; cheap content fingerprint for run manifests.
inline std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for hashing: " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[1 << 15];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
        if (!in) break;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Traceability record written beside command outputs. Deliberately free of
// timestamps, thread counts and absolute paths so reruns stay byte-identical.
inline json make_manifest(const std::string& command,
                          const std::map<std::string, std::string>& inputs, std::uint64_t seed,
                          const std::vector<std::string>& outputs) {
    json in_hashes = json::object();
    for (const auto& [label, path] : inputs) in_hashes[label] = "fnv1a:" + hash_hex(fnv1a_file(path));
    json out_names = json::array();
    for (const std::string& path : outputs)
        out_names.push_back(std::filesystem::path(path).filename().string());
    return {{"tool", "graspgeom"},
            {"version", kVersion},
            {"command", command},
            {"seed", seed},
            {"inputs", in_hashes},
            {"outputs", out_names}};
}

}  // namespace graspgeom
