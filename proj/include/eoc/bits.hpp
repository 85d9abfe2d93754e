#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eoc/error.hpp"

namespace eoc {

/// Dynamic bit string indexed from 0. Bit 0 is the least significant bit of
/// the value/hex encodings.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : bits_(n, 0) {}

  static BitVec from_value(std::uint64_t value, std::size_t n);
  /// Hex encodes ceil(n/8) bytes, two lowercase digits per byte, byte 0
  /// first; bit i lives at byte i/8, position i%8.
  static BitVec from_hex(const std::string& hex, std::size_t n);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  bool test(std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool b) { bits_[i] = b ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  std::uint64_t to_value() const;
  std::string to_hex() const;

  std::size_t popcount() const;
  bool any() const { return popcount() > 0; }

  BitVec& operator^=(const BitVec& other);

  /// Indices of set bits, ascending.
  std::vector<std::uint32_t> set_bits() const;

  bool operator==(const BitVec&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Dot product over GF(2).
bool dot(const BitVec& a, const BitVec& b);

/// 256-bit seed recorded alongside every random artifact.
struct Seed256 {
  std::array<std::uint64_t, 4> words{};

  static Seed256 from_os_entropy();
  static Seed256 from_hex(const std::string& hex);
  /// Convenience for tests and CLI defaults: spreads a small integer.
  static Seed256 from_u64(std::uint64_t v);
  std::string to_hex() const;
  bool operator==(const Seed256&) const = default;
};

/// Deterministic RNG with platform-independent derived draws. All
/// randomness in the project flows through this type so that a recorded
/// seed reproduces keys, paddings, and compiles bit-for-bit.
class Rng {
 public:
  explicit Rng(const Seed256& seed);

  std::uint64_t next();
  bool bit();
  /// Uniform in [0, bound). Mask-rejection, not std::uniform_int_distribution,
  /// so results do not depend on the standard library implementation.
  std::uint32_t below(std::uint32_t bound);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(static_cast<std::uint32_t>(i))]);
    }
  }

  const Seed256& seed() const { return seed_; }

 private:
  Seed256 seed_;
  std::mt19937_64 eng_;
};

}  // namespace eoc
