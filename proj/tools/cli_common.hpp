#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "majsim/errors.hpp"
#include "majsim/version.hpp"

namespace majsim::cli {

inline std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// First line of every command's output: enough to replay the run. No
/// timing or host data, so payloads stay byte-identical across reruns.
inline std::string meta_line(const std::string& command, std::uint64_t seed,
                             const std::string& config) {
  char hash[19];
  std::snprintf(hash, sizeof hash, "0x%016llx",
                static_cast<unsigned long long>(fnv1a64(config)));
  nlohmann::ordered_json meta;
  meta["version"] = kVersion;
  meta["command"] = command;
  meta["seed"] = seed;
  meta["config"] = config;
  meta["config_hash"] = hash;
  nlohmann::ordered_json doc;
  doc["meta"] = std::move(meta);
  return doc.dump();
}

/// "START:STOP:STEP" -> inclusive grid. Count is fixed up front so step
/// accumulation cannot drift past STOP.
inline std::vector<double> parse_p_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos) {
    throw parameter_error("grid must look like START:STOP:STEP, got '" + text +
                          "'");
  }
  double start = 0.0, stop = 0.0, step = 0.0;
  try {
    std::size_t used = 0;
    start = std::stod(text.substr(0, first), &used);
    if (used != first) throw parameter_error("");
    const std::string mid = text.substr(first + 1, second - first - 1);
    stop = std::stod(mid, &used);
    if (used != mid.size()) throw parameter_error("");
    const std::string tail = text.substr(second + 1);
    step = std::stod(tail, &used);
    if (used != tail.size()) throw parameter_error("");
  } catch (const std::exception&) {
    throw parameter_error("grid must look like START:STOP:STEP, got '" + text +
                          "'");
  }
  if (!(start >= 0.0 && stop <= 1.0 && start <= stop)) {
    throw parameter_error("grid endpoints must satisfy 0 <= START <= STOP <= 1");
  }
  if (!(step > 0.0)) throw parameter_error("grid STEP must be positive");
  const auto count = static_cast<std::size_t>((stop - start) / step + 1e-9) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = start + static_cast<double>(k) * step;
  return grid;
}

/// "LO..HI" or a single integer.
inline std::pair<int, int> parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      std::size_t used = 0;
      const int n = std::stoi(text, &used);
      if (used != text.size()) throw parameter_error("");
      return {n, n};
    }
    std::size_t used = 0;
    const std::string head = text.substr(0, dots);
    const int lo = std::stoi(head, &used);
    if (used != head.size()) throw parameter_error("");
    const std::string tail = text.substr(dots + 2);
    const int hi = std::stoi(tail, &used);
    if (used != tail.size()) throw parameter_error("");
    if (lo > hi) throw parameter_error("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw parameter_error("vertex range must be an integer or LO..HI, got '" +
                          text + "'");
  }
}

}  // namespace majsim::cli
