#ifndef TIRILMAN_CACHE_HPP
#define TIRILMAN_CACHE_HPP

// Append-only result cache: one JSON object per line,
//   {"key": "<op>:<input hash>:<params hash>", "value": {...}}
// Lines that fail to parse or lack the two fields are ignored (and the
// value recomputed by the caller).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tirilman/rng.hpp"

namespace tirilman {

class ResultCache {
 public:
  ResultCache() = default;

  /// Opens (and loads) the cache file; a missing file is an empty cache.
  explicit ResultCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_, std::ios::binary);
    std::string line;
    while (std::getline(in, line)) {
      // A torn final line (no newline) gets one before the next append.
      torn_ = in.eof();
      if (line.empty()) continue;
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j["key"].is_string() ||
          !j.contains("value")) {
        ++ignored_;
        continue;
      }
      entries_[j["key"].get<std::string>()] = std::move(j["value"]);
    }
  }

  /// 128-bit hex digest (two FNV-1a passes with different bases).
  static std::string digest(std::string_view text) {
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(fnv1a(text)),
                  static_cast<unsigned long long>(fnv1a(text, 0x84222325cbf29ce4ULL)));
    return buf;
  }

  static std::string key(std::string_view op, std::string_view input, std::string_view params) {
    return std::string(op) + ":" + digest(input) + ":" + digest(params);
  }

  bool enabled() const noexcept { return !path_.empty(); }

  std::optional<nlohmann::json> lookup(const std::string& k) const {
    const auto it = entries_.find(k);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void store(const std::string& k, const nlohmann::json& value) {
    entries_[k] = value;
    if (!enabled()) return;
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (torn_) out << '\n';
    torn_ = false;
    out << nlohmann::json{{"key", k}, {"value", value}}.dump() << '\n';
  }

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t ignored() const noexcept { return ignored_; }

 private:
  std::string path_;
  std::map<std::string, nlohmann::json> entries_;
  std::size_t ignored_ = 0;
  bool torn_ = false;
};

}  // namespace tirilman

#endif  // TIRILMAN_CACHE_HPP
