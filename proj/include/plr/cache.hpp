#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace plr {

inline constexpr std::string_view kEngineVersion = "plr-engine-1";

// FNV-1a 64 of the engine version, command kind and normalized parameters,
// as 16 hex digits.
std::string request_digest(std::string_view kind, std::string_view params);

// File-per-entry result cache under $PLR_CACHE_DIR. Disabled when that
// variable is unset or when constructed with enabled = false.
class ResultCache {
 public:
  explicit ResultCache(bool enabled = true);

  bool enabled() const { return !dir_.empty(); }
  std::optional<std::string> get(const std::string& digest) const;
  // Best effort; write failures leave the cache unchanged.
  void put(const std::string& digest, const std::string& payload) const;

 private:
  std::string dir_;
};

}  // namespace plr
