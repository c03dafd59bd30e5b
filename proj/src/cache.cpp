#include "plr/cache.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace plr {

namespace fs = std::filesystem;

std::string request_digest(std::string_view kind, std::string_view params) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;  // field separator
    h *= 1099511628211ULL;
  };
  feed(kEngineVersion);
  feed(kind);
  feed(params);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ResultCache::ResultCache(bool enabled) {
  if (!enabled) return;
  if (const char* env = std::getenv("PLR_CACHE_DIR"); env && *env) dir_ = env;
}

namespace {
std::string header(const std::string& digest) { return std::string(kEngineVersion) + " " + digest + "\n"; }
}  // namespace

std::optional<std::string> ResultCache::get(const std::string& digest) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(fs::path(dir_) / (digest + ".entry"), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string body = ss.str();
  const std::string h = header(digest);
  if (body.compare(0, h.size(), h) != 0) return std::nullopt;
  return body.substr(h.size());
}

void ResultCache::put(const std::string& digest, const std::string& payload) const {
  if (!enabled()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return;
  const fs::path final_path = fs::path(dir_) / (digest + ".entry");
  const fs::path tmp = final_path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << header(digest) << payload;
    if (!out) return;
  }
  fs::rename(tmp, final_path, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace plr
