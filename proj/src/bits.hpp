#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <type_traits>
#include <utility>

#include "plr/error.hpp"

namespace plr::detail {

template <int W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }

  Bits& operator|=(const Bits& o) {
    for (int k = 0; k < W; ++k) w[k] |= o.w[k];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (int k = 0; k < W; ++k) w[k] &= o.w[k];
    return *this;
  }
  Bits operator|(const Bits& o) const { Bits r = *this; r |= o; return r; }
  Bits operator&(const Bits& o) const { Bits r = *this; r &= o; return r; }
  Bits andnot(const Bits& o) const {
    Bits r;
    for (int k = 0; k < W; ++k) r.w[k] = w[k] & ~o.w[k];
    return r;
  }
  bool none() const {
    for (int k = 0; k < W; ++k)
      if (w[k]) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (int k = 0; k < W; ++k) c += std::popcount(w[k]);
    return c;
  }
  int first() const {
    for (int k = 0; k < W; ++k)
      if (w[k]) return k * 64 + std::countr_zero(w[k]);
    return -1;
  }
  // Bits [start, start + len) as an integer, len <= 64.
  std::uint64_t field(int start, int len) const {
    int k = start >> 6, off = start & 63;
    std::uint64_t v = w[k] >> off;
    if (off + len > 64 && k + 1 < W) v |= w[k + 1] << (64 - off);
    return len == 64 ? v : v & ((std::uint64_t{1} << len) - 1);
  }
  bool operator==(const Bits&) const = default;

  template <class F>
  void for_each(F&& f) const {
    for (int k = 0; k < W; ++k) {
      std::uint64_t x = w[k];
      while (x) {
        f(k * 64 + std::countr_zero(x));
        x &= x - 1;
      }
    }
  }
};

inline constexpr int kMaxVars = 1024;

// Calls f(std::integral_constant<int, W>{}) for the smallest supported W
// that holds `vars` bits.
template <class F>
decltype(auto) dispatch_words(int vars, F&& f) {
  if (vars <= 64) return f(std::integral_constant<int, 1>{});
  if (vars <= 128) return f(std::integral_constant<int, 2>{});
  if (vars <= 256) return f(std::integral_constant<int, 4>{});
  if (vars <= 512) return f(std::integral_constant<int, 8>{});
  if (vars <= kMaxVars) return f(std::integral_constant<int, 16>{});
  fail(ErrorKind::BackendUnavailable, "systems above " + std::to_string(kMaxVars) + " variables are not supported");
}

}  // namespace plr::detail
