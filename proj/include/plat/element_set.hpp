#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace plat {

using Elem = std::uint32_t;

/// Membership bit-vector over the elements of one group.
///
/// Bit i is element index i. Two sets are only comparable when built for the
/// same group (same size).
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static ElementSet full(std::size_t size);
  static ElementSet singleton(std::size_t size, Elem x);

  std::size_t size() const noexcept { return size_; }

  bool test(Elem x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void set(Elem x) noexcept { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  void reset(Elem x) noexcept { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool subset_of(const ElementSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  ElementSet& operator|=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  /// Canonical order: compare words from index 0 upward as unsigned integers.
  friend bool canonical_less(const ElementSet& a, const ElementSet& b) noexcept {
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    return false;
  }

  /// Set elements in increasing index order.
  std::vector<Elem> elements() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        const int b = std::countr_zero(w);
        f(static_cast<Elem>(wi * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
  }

  /// Hex string, most significant nibble first, ceil(size/4) digits.
  std::string to_hex() const;

  std::size_t hash() const noexcept;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

}  // namespace plat
