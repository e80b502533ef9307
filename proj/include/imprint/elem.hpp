#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>

namespace imprint {

inline constexpr std::size_t kElemBits = 512;

/// Fixed-width bit-vector encoding of a semiring element.
struct Elem {
  std::array<std::uint64_t, kElemBits / 64> w{};

  bool test(std::size_t i) const noexcept { return w[i >> 6] >> (i & 63) & 1u; }
  void set(std::size_t i) noexcept { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  /// Reads `width` (<= 64) bits starting at `offset`.
  std::uint64_t get_bits(std::size_t offset, std::size_t width) const noexcept {
    if (width == 0) return 0;
    std::size_t word = offset >> 6, shift = offset & 63;
    std::uint64_t v = w[word] >> shift;
    if (shift + width > 64 && word + 1 < w.size()) v |= w[word + 1] << (64 - shift);
    return width == 64 ? v : v & ((std::uint64_t{1} << width) - 1);
  }
  /// ORs the low `width` bits of v in at `offset`.
  void or_bits(std::size_t offset, std::size_t width, std::uint64_t v) noexcept {
    if (width == 0) return;
    if (width < 64) v &= (std::uint64_t{1} << width) - 1;
    std::size_t word = offset >> 6, shift = offset & 63;
    w[word] |= v << shift;
    if (shift && shift + width > 64 && word + 1 < w.size()) w[word + 1] |= v >> (64 - shift);
  }
  void clear_bits(std::size_t offset, std::size_t width) noexcept {
    for (std::size_t i = 0; i < width; ++i) reset(offset + i);
  }

  Elem& operator|=(const Elem& o) noexcept {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    return *this;
  }
  Elem& operator&=(const Elem& o) noexcept {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
    return *this;
  }
  friend Elem operator|(Elem a, const Elem& b) noexcept { return a |= b; }
  friend Elem operator&(Elem a, const Elem& b) noexcept { return a &= b; }

  bool subset_of(const Elem& o) const noexcept {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
  bool none() const noexcept {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto x : w) n += static_cast<std::size_t>(std::popcount(x));
    return n;
  }

  friend bool operator==(const Elem&, const Elem&) = default;
  friend auto operator<=>(const Elem& a, const Elem& b) noexcept { return a.w <=> b.w; }

  /// Hex dump, most significant word first, leading zero words skipped.
  std::string hex() const;
};

struct ElemHash {
  std::size_t operator()(const Elem& e) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : e.w) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace imprint
