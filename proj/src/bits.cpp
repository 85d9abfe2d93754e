#include "eoc/bits.hpp"

#include <algorithm>

namespace eoc {

BitVec BitVec::from_value(std::uint64_t value, std::size_t n) {
  if (n > 64) throw ValidationError("BitVec::from_value: width exceeds 64");
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) v.bits_[i] = (value >> i) & 1u;
  return v;
}

static int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

BitVec BitVec::from_hex(const std::string& hex, std::size_t n) {
  const std::size_t nbytes = (n + 7) / 8;
  if (hex.size() != 2 * nbytes)
    throw ValidationError("BitVec::from_hex: expected " +
                          std::to_string(2 * nbytes) + " hex digits, got " +
                          std::to_string(hex.size()));
  BitVec v(n);
  for (std::size_t byte = 0; byte < nbytes; ++byte) {
    const int hi = hex_digit(hex[2 * byte]);
    const int lo = hex_digit(hex[2 * byte + 1]);
    if (hi < 0 || lo < 0) throw ValidationError("BitVec::from_hex: bad digit");
    const std::uint8_t b = static_cast<std::uint8_t>((hi << 4) | lo);
    for (std::size_t k = 0; k < 8; ++k) {
      const std::size_t i = byte * 8 + k;
      if (i >= n) {
        if ((b >> k) & 1u)
          throw ValidationError("BitVec::from_hex: padding bits must be zero");
        continue;
      }
      v.bits_[i] = (b >> k) & 1u;
    }
  }
  return v;
}

std::uint64_t BitVec::to_value() const {
  if (size() > 64) throw ValidationError("BitVec::to_value: width exceeds 64");
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < size(); ++i)
    if (bits_[i]) value |= (std::uint64_t{1} << i);
  return value;
}

std::string BitVec::to_hex() const {
  static const char* digits = "0123456789abcdef";
  const std::size_t nbytes = (size() + 7) / 8;
  std::string out(2 * nbytes, '0');
  for (std::size_t byte = 0; byte < nbytes; ++byte) {
    std::uint8_t b = 0;
    for (std::size_t k = 0; k < 8; ++k) {
      const std::size_t i = byte * 8 + k;
      if (i < size() && bits_[i]) b |= static_cast<std::uint8_t>(1u << k);
    }
    out[2 * byte] = digits[b >> 4];
    out[2 * byte + 1] = digits[b & 0xF];
  }
  return out;
}

std::size_t BitVec::popcount() const {
  std::size_t c = 0;
  for (auto b : bits_) c += b;
  return c;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  if (other.size() != size())
    throw ValidationError("BitVec::operator^=: size mismatch");
  for (std::size_t i = 0; i < size(); ++i) bits_[i] ^= other.bits_[i];
  return *this;
}

std::vector<std::uint32_t> BitVec::set_bits() const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (bits_[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

bool dot(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) throw ValidationError("dot: size mismatch");
  bool acc = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc ^= (a.test(i) && b.test(i));
  return acc;
}

Seed256 Seed256::from_os_entropy() {
  std::random_device rd;
  Seed256 s;
  for (auto& w : s.words)
    w = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  return s;
}

Seed256 Seed256::from_hex(const std::string& hex) {
  if (hex.size() != 64) throw ValidationError("seed must be 64 hex digits");
  Seed256 s;
  for (int w = 0; w < 4; ++w) {
    std::uint64_t v = 0;
    for (int k = 0; k < 16; ++k) {
      const int d = hex_digit(hex[w * 16 + k]);
      if (d < 0) throw ValidationError("seed: bad hex digit");
      v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    s.words[w] = v;
  }
  return s;
}

Seed256 Seed256::from_u64(std::uint64_t v) {
  Seed256 s;
  // SplitMix64 spread so nearby integers give unrelated seeds.
  std::uint64_t x = v;
  for (auto& w : s.words) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    w = z ^ (z >> 31);
  }
  return s;
}

std::string Seed256::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (auto w : words)
    for (int k = 15; k >= 0; --k) out.push_back(digits[(w >> (4 * k)) & 0xF]);
  return out;
}

Rng::Rng(const Seed256& seed) : seed_(seed) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed.words[0]),
      static_cast<std::uint32_t>(seed.words[0] >> 32),
      static_cast<std::uint32_t>(seed.words[1]),
      static_cast<std::uint32_t>(seed.words[1] >> 32),
      static_cast<std::uint32_t>(seed.words[2]),
      static_cast<std::uint32_t>(seed.words[2] >> 32),
      static_cast<std::uint32_t>(seed.words[3]),
      static_cast<std::uint32_t>(seed.words[3] >> 32),
  };
  eng_.seed(seq);
}

std::uint64_t Rng::next() { return eng_(); }

bool Rng::bit() { return (next() >> 63) != 0; }

std::uint32_t Rng::below(std::uint32_t bound) {
  if (bound == 0) throw ValidationError("Rng::below: zero bound");
  if (bound == 1) return 0;
  std::uint32_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  for (;;) {
    const std::uint32_t x = static_cast<std::uint32_t>(next()) & mask;
    if (x < bound) return x;
  }
}

}  // namespace eoc
