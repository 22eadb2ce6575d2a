#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace lutldpc {

/// FNV-1a 64-bit content hash, used to fingerprint inputs in run manifests.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);
std::string hash_file(const std::string& path);

/// Every output file is accompanied by a manifest recording the subcommand,
/// the fully resolved configuration, the seed and input hashes -- enough to
/// reproduce the output bit-exactly.
struct RunManifest {
    std::string subcommand;
    std::string tool_version;
    std::string config_json;                       // resolved config, JSON text
    std::uint64_t seed = 0;
    std::map<std::string, std::string> input_hashes; // path -> fnv1a64 hex
    std::string artifact_hash;                       // empty if no artifact involved

    std::string to_json() const;
};

/// Writes `<output_path>.manifest.json` next to the output file.
void write_manifest(const RunManifest& m, const std::string& output_path);

} // namespace lutldpc
