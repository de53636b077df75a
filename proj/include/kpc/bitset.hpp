#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace kpc {

// Dynamically sized bit mask over item indices. Bit i lives in word i/64.
// Unused high bits of the last word are kept zero.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int32_t n) : nbits_(n), words_((n + 63) / 64, 0u) {}

  int32_t size() const { return nbits_; }

  void set(int32_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  void reset(int32_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool test(int32_t i) const {
    return (words_[i >> 6] >> (i & 63)) & uint64_t{1};
  }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  int32_t count() const {
    int32_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  /// Index of the first set bit at or after `from`, or -1 if none.
  int32_t next_set(int32_t from) const {
    if (from >= nbits_) return -1;
    size_t wi = static_cast<size_t>(from) >> 6;
    uint64_t w = words_[wi] & (~uint64_t{0} << (from & 63));
    while (true) {
      if (w) return static_cast<int32_t>((wi << 6) + std::countr_zero(w));
      if (++wi >= words_.size()) return -1;
      w = words_[wi];
    }
  }

  bool intersects(const Bitset& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  int32_t count_and(const Bitset& o) const {
    int32_t c = 0;
    for (size_t i = 0; i < words_.size(); ++i)
      c += std::popcount(words_[i] & o.words_[i]);
    return c;
  }

  /// *this &= ~o
  void remove(const Bitset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  }

  void assign_and_not(const Bitset& a, const Bitset& b) {
    for (size_t i = 0; i < words_.size(); ++i)
      words_[i] = a.words_[i] & ~b.words_[i];
  }

  size_t word_count() const { return words_.size(); }
  uint64_t word(size_t i) const { return words_[i]; }

  template <class F>
  void for_each_set(F&& f) const {
    for (size_t wi = 0; wi < words_.size(); ++wi) {
      uint64_t w = words_[wi];
      while (w) {
        f(static_cast<int32_t>((wi << 6) + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  bool operator==(const Bitset&) const = default;

 private:
  int32_t nbits_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace kpc
