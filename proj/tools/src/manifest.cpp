#include "manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <stdexcept>

#include "json.hpp"
#include "orbitour/json_io.hpp"

namespace orbitour::cli {

std::string sha1_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha1(), nullptr) != 1)
    throw std::runtime_error("SHA-1 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

void RunManifest::add_input(const std::string& path) { inputs.push_back({path, sha1_hex(read_text_file(path))}); }

void RunManifest::add_output(const std::string& path, const std::string& content) {
  outputs.push_back({path, sha1_hex(content)});
}

// git-style: hash a "blob <len>\0" header per file so identical bytes give identical hashes.
std::string RunManifest::input_hash() const {
  std::string acc;
  for (const FileRecord& f : inputs) acc += f.sha1;
  const std::string header = "blob " + std::to_string(acc.size());
  return sha1_hex(header + '\0' + acc);
}

std::string RunManifest::to_json() const {
  using json = nlohmann::ordered_json;
  json seeds_j = json::object();
  for (const auto& [k, v] : seeds) seeds_j[k] = v;
  auto files = [](const std::vector<FileRecord>& v) {
    json a = json::array();
    for (const FileRecord& f : v) a.push_back({{"path", f.path}, {"sha1", f.sha1}});
    return a;
  };
  json config = json::object();
  if (!config_snapshot.empty()) config = json::parse(config_snapshot);
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  json j{{"version", kSchemaVersion},
         {"command", command},
         {"argv", argv},
         {"config", config},
         {"seeds", seeds_j},
         {"inputs", files(inputs)},
         {"input_hash", input_hash()},
         {"outputs", files(outputs)},
         {"wall_time_s", wall_time_s},
         {"finished_utc", stamp},
         {"exit_code", exit_code}};
  return j.dump(2) + "\n";
}

std::string manifest_path_for(const std::string& output) {
  std::filesystem::path p(output);
  if (std::filesystem::is_directory(p)) return (p / "manifest.json").string();
  return p.replace_extension().string() + ".manifest.json";
}

}  // namespace orbitour::cli
