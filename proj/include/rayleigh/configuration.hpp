#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rayleigh/error.hpp"

namespace rayleigh {

/// A point of the Boolean lattice {0,1}^n, stored as packed 64-bit words.
///
/// Coordinate i (0-based) is bit i. The string form is little-endian:
/// character i is coordinate i, so "10" has coordinate 0 set.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(int n) : n_(n), words_(word_count(n), 0) {
    if (n < 0) throw InvalidArgument("configuration length must be nonnegative");
  }

  static Configuration from_mask(int n, std::uint64_t mask) {
    Configuration c(n);
    c.assign_mask(mask);
    return c;
  }

  static Configuration from_string(std::string_view bits) {
    Configuration c(static_cast<int>(bits.size()));
    for (int i = 0; i < c.n_; ++i) {
      const char ch = bits[static_cast<std::size_t>(i)];
      if (ch == '1') {
        c.set(i, true);
      } else if (ch != '0') {
        throw ParseError("configuration string may only contain '0' and '1': " +
                         std::string(bits));
      }
    }
    return c;
  }

  static Configuration from_indices(int n, const std::vector<int>& ones) {
    Configuration c(n);
    for (int i : ones) c.set(i, true);
    return c;
  }

  int size() const noexcept { return n_; }

  bool operator[](int i) const noexcept {
    return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1U;
  }

  bool test(int i) const {
    check_index(i);
    return (*this)[i];
  }

  void set(int i, bool value) {
    check_index(i);
    auto& w = words_[static_cast<std::size_t>(i >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    w = value ? (w | bit) : (w & ~bit);
  }

  void flip(int i) {
    check_index(i);
    words_[static_cast<std::size_t>(i >> 6)] ^= std::uint64_t{1} << (i & 63);
  }

  /// Overwrites the first 64 coordinates; requires n <= 64.
  void assign_mask(std::uint64_t mask) {
    if (n_ > 64) throw InvalidArgument("assign_mask requires at most 64 coordinates");
    if (n_ == 0) return;
    words_[0] = n_ == 64 ? mask : (mask & ((std::uint64_t{1} << n_) - 1));
  }

  std::uint64_t mask() const {
    if (n_ > 64) throw InvalidArgument("mask requires at most 64 coordinates");
    return n_ == 0 ? 0 : words_[0];
  }

  /// Counting function N: number of ones.
  int count() const noexcept {
    int total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
  }

  int hamming(const Configuration& other) const {
    require_same_size(other);
    int total = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      total += std::popcount(words_[i] ^ other.words_[i]);
    return total;
  }

  /// Coordinatewise x >= y.
  bool dominates(const Configuration& other) const {
    require_same_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (other.words_[i] & ~words_[i]) return false;
    return true;
  }

  /// x covers y: x >= y and they differ in exactly one coordinate.
  bool covers(const Configuration& other) const {
    return dominates(other) && hamming(other) == 1;
  }

  std::vector<int> ones() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if ((*this)[i]) out.push_back(i);
    return out;
  }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i)
      if ((*this)[i]) s[static_cast<std::size_t>(i)] = '1';
    return s;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration& a, const Configuration& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

 private:
  static std::size_t word_count(int n) { return n <= 0 ? 0 : static_cast<std::size_t>((n + 63) / 64); }

  void check_index(int i) const {
    if (i < 0 || i >= n_)
      throw InvalidArgument("coordinate " + std::to_string(i) + " out of range for length " +
                            std::to_string(n_));
  }

  void require_same_size(const Configuration& other) const {
    if (other.n_ != n_)
      throw DimensionMismatch("configurations of length " + std::to_string(n_) + " and " +
                              std::to_string(other.n_));
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rayleigh
