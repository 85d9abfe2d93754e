#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "eoc/gate.hpp"

namespace eoc {

using Gate = std::variant<ControlledGate, Gate3>;

std::uint32_t gate_max_line(const Gate& g);
Gate gate_inverted(const Gate& g);
void apply(const Gate& g, BitVec& state);
std::uint64_t apply(const Gate& g, std::uint64_t state, std::uint32_t width);

/// Ordered gate list on `width` lines. gates[0] is applied first to the
/// state; operator-notation products read the other way around and are
/// converted at this boundary.
struct Circuit {
  std::uint32_t width = 0;
  std::uint8_t registers = 1;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(std::uint32_t width_) : width(width_) {}

  void push(Gate g);
  void append(const Circuit& other);

  void apply(BitVec& state) const;
  BitVec applied(const BitVec& state) const;
  std::uint64_t apply_value(std::uint64_t state) const;
};

inline constexpr std::uint32_t kDefaultOracleWidthLimit = 20;

/// Brute-force permutation table: table[x] = circuit applied to x. Refuses
/// widths above the limit (2^20 entries is the default desk cap).
std::vector<std::uint32_t> truth_table(
    const Circuit& c, std::uint32_t width_limit = kDefaultOracleWidthLimit);

bool is_permutation_table(const std::vector<std::uint32_t>& table);

/// Reverses gate order and inverts each gate, so the result undoes `c`.
Circuit inverted(const Circuit& c);

/// Composition: first `a`, then `b` (widths must match).
Circuit concatenated(const Circuit& a, const Circuit& b);

/// Line-oriented text format:
///   # comment
///   n <width>
///   registers <1|2>            (optional, default 1)
///   NOT t=<i>
///   CNOT c=<+|-><i> t=<j>
///   TOFFOLI c=<+|-><i> c=<+|-><j> t=<k>
///   GATE t=<i> c=... (for tails with more than two controls)
///   G3 j=<i>,<j>,<k> lut=<p0..p7>
/// Printing is canonical; parse(print(c)) == c and print(parse(s)) is
/// byte-stable.
std::string print_circuit(const Circuit& c);
Circuit parse_circuit(std::istream& in);
Circuit parse_circuit_text(const std::string& text);

Circuit load_circuit(const std::string& path);
void save_circuit(const Circuit& c, const std::string& path);

}  // namespace eoc
