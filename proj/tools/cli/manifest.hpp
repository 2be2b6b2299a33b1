#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace refgame::cli {

std::string sha256_file(const std::filesystem::path& path);

// Everything needed to reproduce one command's output: the command, every
// resolved setting, the seed, input digests and the tool version.
class RunManifest {
 public:
  explicit RunManifest(std::string command) : command_(std::move(command)) {}

  void set(const std::string& key, std::string value) { settings_[key] = std::move(value); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void add_input(const std::filesystem::path& path);

  std::string to_json() const;

 private:
  std::string command_;
  std::map<std::string, std::string> settings_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::optional<std::uint64_t> seed_;
};

}  // namespace refgame::cli
