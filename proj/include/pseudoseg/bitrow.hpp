#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace pseudoseg {

/// Fixed-length bit vector. Bit 0 is element 1 of the ground set and is the
/// least significant bit when the row is read as an integer.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  /// |a XOR b|; both rows must have the same size.
  static std::size_t distance(const BitRow& a, const BitRow& b) {
    std::size_t c = 0;
    for (std::size_t k = 0; k < a.words_.size(); ++k) {
      c += static_cast<std::size_t>(std::popcount(a.words_[k] ^ b.words_[k]));
    }
    return c;
  }

  BitRow& operator^=(const BitRow& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
    return *this;
  }
  BitRow& operator&=(const BitRow& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  friend BitRow operator&(BitRow a, const BitRow& b) { return a &= b; }
  friend BitRow operator^(BitRow a, const BitRow& b) { return a ^= b; }

  const std::vector<std::uint64_t>& words() const { return words_; }

  /// Index of the lowest set bit at or after `from`, or size() if none.
  std::size_t next_set(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t k = from >> 6;
    std::uint64_t w = words_[k] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) {
        const std::size_t i = (k << 6) + static_cast<std::size_t>(std::countr_zero(w));
        return i < size_ ? i : size_;
      }
      if (++k >= words_.size()) return size_;
      w = words_[k];
    }
  }

  /// Comparison as unsigned integers (element 1 least significant),
  /// then by size.
  friend std::strong_ordering operator<=>(const BitRow& a, const BitRow& b) {
    if (a.size_ != b.size_) return a.size_ <=> b.size_;
    for (std::size_t k = a.words_.size(); k-- > 0;) {
      if (a.words_[k] != b.words_[k]) return a.words_[k] <=> b.words_[k];
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const BitRow& a, const BitRow& b) = default;

  /// Membership string, element 1 first.
  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitRowHash {
  std::size_t operator()(const BitRow& r) const {
    std::uint64_t h = 1469598103934665603ULL ^ r.size();
    for (auto w : r.words()) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace pseudoseg
