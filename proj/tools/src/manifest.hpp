#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace orbitour::cli {

std::string sha1_hex(const std::string& bytes);

struct FileRecord {
  std::string path;
  std::string sha1;
};

// Provenance record written next to every primary output. Only the manifest
// carries wall-clock data, so the outputs themselves stay byte-stable.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::string config_snapshot;  // JSON text
  std::vector<std::pair<std::string, std::uint64_t>> seeds;
  std::vector<FileRecord> inputs;
  std::vector<FileRecord> outputs;
  double wall_time_s = 0.0;
  int exit_code = 0;

  void add_input(const std::string& path);     // hashes the file on disk
  void add_output(const std::string& path, const std::string& content);
  std::string input_hash() const;              // combined content hash of all inputs
  std::string to_json() const;
};

std::string manifest_path_for(const std::string& output);

}  // namespace orbitour::cli
