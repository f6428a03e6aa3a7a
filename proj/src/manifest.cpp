#include "twostep/manifest.hpp"

#include <boost/crc.hpp>
#include <cstdio>
#include <sstream>

namespace twostep {

std::string checksum(std::string_view content) {
  boost::crc_32_type crc;
  crc.process_bytes(content.data(), content.size());
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  return buf;
}

std::string RunManifest::to_text() const {
  std::ostringstream out;
  out << "[run]\n";
  out << "tool = twostep " << kToolVersion << "\n";
  out << "subcommand = " << subcommand << "\n";
  if (!seed.empty()) out << "seed = " << seed << "\n";
  out << "[config]\n";
  for (const auto& [k, v] : config) out << k << " = " << v << "\n";
  out << "[inputs]\n";
  for (const auto& [name, sum] : inputs) out << name << " = crc32:" << sum << "\n";
  out << "[counters]\n";
  for (const auto& [k, v] : counters) out << k << " = " << v << "\n";
  return out.str();
}

}  // namespace twostep
