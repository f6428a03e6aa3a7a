// Run manifest: what was run, on which inputs, with which settings.
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace twostep {

inline constexpr std::string_view kToolVersion = "0.3.0";

/// CRC-32 of the content as 8 lowercase hex digits.
std::string checksum(std::string_view content);

struct RunManifest {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, std::string>> inputs;  // name -> checksum
  std::string seed;
  std::map<std::string, std::size_t> counters;

  void set(std::string key, std::string value) { config.emplace_back(std::move(key), std::move(value)); }
  void add_input(std::string name, std::string_view content) { inputs.emplace_back(std::move(name), checksum(content)); }

  /// "key = value" lines in fixed section order.
  std::string to_text() const;
};

}  // namespace twostep
