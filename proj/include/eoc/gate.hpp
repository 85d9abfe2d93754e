#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "eoc/bits.hpp"

namespace eoc {

/// One polarized control literal. A non-negated control fires on 1, a
/// negated control fires on 0 (x XOR 1).
struct Control {
  std::uint32_t line = 0;
  bool negated = false;

  auto operator<=>(const Control&) const = default;
};

/// Boolean-controlled bit flip: the target bit is XORed with the product of
/// the polarized control literals. NOT, CNOT and Toffoli are the 0-, 1- and
/// 2-control instances; larger tails appear as rewrite intermediates.
///
/// Controls are kept sorted by line so syntactically equal gates compare
/// equal. The target never appears among the control lines and control
/// lines are pairwise distinct.
class ControlledGate {
 public:
  ControlledGate(std::uint32_t target, std::vector<Control> controls);

  static ControlledGate not_gate(std::uint32_t target);
  static ControlledGate cnot(Control control, std::uint32_t target);
  static ControlledGate toffoli(Control c1, Control c2, std::uint32_t target);

  std::uint32_t target() const { return target_; }
  const std::vector<Control>& controls() const { return controls_; }
  std::size_t arity() const { return controls_.size(); }
  std::uint32_t max_line() const;

  bool fires(const BitVec& state) const;
  bool fires(std::uint64_t state) const;

  bool operator==(const ControlledGate&) const = default;
  auto operator<=>(const ControlledGate&) const = default;

 private:
  std::uint32_t target_;
  std::vector<Control> controls_;
};

void apply_gate(const ControlledGate& g, BitVec& state);
BitVec applied_gate(const ControlledGate& g, const BitVec& state);
std::uint64_t apply_gate(const ControlledGate& g, std::uint64_t state,
                         std::uint32_t width);

/// Permutation of {0..7}.
struct Lut8 {
  std::array<std::uint8_t, 8> map{0, 1, 2, 3, 4, 5, 6, 7};

  static Lut8 identity() { return Lut8{}; }
  bool is_permutation() const;
  Lut8 inverted() const;
  std::uint8_t operator()(std::uint8_t x) const { return map[x]; }
  /// Boolean coordinate k of the output, as an 8-entry bitmask over inputs.
  std::uint8_t coordinate(int k) const;

  bool operator==(const Lut8&) const = default;
  auto operator<=>(const Lut8&) const = default;
};

/// 3-bit gate placed on ordered lines j1 < j2 < j3. The local value read
/// from the state is xentry = x_{j1} + 2*x_{j2} + 4*x_{j3}.
struct Gate3 {
  std::array<std::uint32_t, 3> lines{};
  Lut8 lut;

  Gate3() = default;
  Gate3(std::array<std::uint32_t, 3> lines_, Lut8 lut_);

  Gate3 inverted() const { return Gate3(lines, lut.inverted()); }
  std::uint32_t max_line() const { return lines[2]; }

  bool operator==(const Gate3&) const = default;
};

void apply_gate3(const Gate3& g, BitVec& state);
BitVec applied_gate3(const Gate3& g, const BitVec& state);
std::uint64_t apply_gate3(const Gate3& g, std::uint64_t state,
                          std::uint32_t width);

/// Invertible affine map y = M x XOR c on 3 local bits. Columns are stored
/// as 3-bit masks (bit k of cols[j] is row k of column j); shift is a 3-bit
/// mask.
struct Affine3 {
  std::array<std::uint8_t, 3> cols{1, 2, 4};
  std::uint8_t shift = 0;

  static Affine3 identity() { return Affine3{}; }

  std::uint8_t apply(std::uint8_t x) const;
  bool invertible() const;
  Affine3 inverted() const;
  Lut8 to_lut() const;
  /// Affine extraction: returns the map when the lut is affine, else nullopt.
  static std::optional<Affine3> from_lut(const Lut8& lut);

  int column_weight(int j) const;

  bool operator==(const Affine3&) const = default;
  auto operator<=>(const Affine3&) const = default;
};

/// An Affine3 placed on circuit lines; behaves exactly like the Gate3 with
/// the same lut.
struct AffineGate3 {
  std::array<std::uint32_t, 3> lines{};
  Affine3 map;

  AffineGate3() = default;
  AffineGate3(std::array<std::uint32_t, 3> lines_, Affine3 map_);

  Gate3 to_gate3() const { return Gate3(lines, map.to_lut()); }

  bool operator==(const AffineGate3&) const = default;
};

}  // namespace eoc
