#include "lutldpc/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lutldpc/errors.hpp"

namespace lutldpc {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::ostringstream os;
    os << std::hex << fnv1a64(bytes);
    return os.str();
}

std::string hash_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw validation_error("cannot open for hashing: " + path);
    std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return fnv1a64_hex(bytes);
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["tool_version"] = tool_version;
    j["config"] = nlohmann::json::parse(config_json.empty() ? "{}" : config_json);
    j["seed"] = seed;
    j["input_hashes"] = input_hashes;
    if (!artifact_hash.empty()) j["artifact_hash"] = artifact_hash;
    return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::string& output_path) {
    std::string path = output_path + ".manifest.json";
    std::ofstream os(path, std::ios::binary);
    if (!os) throw validation_error("cannot open for writing: " + path);
    os << m.to_json();
    if (!os) throw validation_error("write failed: " + path);
}

} // namespace lutldpc
