#include "eoc/gate.hpp"

#include <algorithm>

namespace eoc {

ControlledGate::ControlledGate(std::uint32_t target,
                               std::vector<Control> controls)
    : target_(target), controls_(std::move(controls)) {
  std::sort(controls_.begin(), controls_.end());
  for (std::size_t i = 0; i < controls_.size(); ++i) {
    if (controls_[i].line == target_)
      throw ValidationError("ControlledGate: target overlaps a control line");
    if (i > 0 && controls_[i].line == controls_[i - 1].line)
      throw ValidationError("ControlledGate: duplicate control line");
  }
}

ControlledGate ControlledGate::not_gate(std::uint32_t target) {
  return ControlledGate(target, {});
}

ControlledGate ControlledGate::cnot(Control control, std::uint32_t target) {
  return ControlledGate(target, {control});
}

ControlledGate ControlledGate::toffoli(Control c1, Control c2,
                                       std::uint32_t target) {
  return ControlledGate(target, {c1, c2});
}

std::uint32_t ControlledGate::max_line() const {
  std::uint32_t m = target_;
  for (const auto& c : controls_) m = std::max(m, c.line);
  return m;
}

bool ControlledGate::fires(const BitVec& state) const {
  for (const auto& c : controls_)
    if (state.test(c.line) == c.negated) return false;
  return true;
}

bool ControlledGate::fires(std::uint64_t state) const {
  for (const auto& c : controls_) {
    const bool bit = (state >> c.line) & 1u;
    if (bit == c.negated) return false;
  }
  return true;
}

void apply_gate(const ControlledGate& g, BitVec& state) {
  if (g.max_line() >= state.size())
    throw ValidationError("apply_gate: gate line out of range");
  if (g.fires(state)) state.flip(g.target());
}

BitVec applied_gate(const ControlledGate& g, const BitVec& state) {
  BitVec out = state;
  apply_gate(g, out);
  return out;
}

std::uint64_t apply_gate(const ControlledGate& g, std::uint64_t state,
                         std::uint32_t width) {
  if (g.max_line() >= width)
    throw ValidationError("apply_gate: gate line out of range");
  if (g.fires(state)) state ^= (std::uint64_t{1} << g.target());
  return state;
}

bool Lut8::is_permutation() const {
  std::uint8_t seen = 0;
  for (auto v : map) {
    if (v > 7) return false;
    seen |= static_cast<std::uint8_t>(1u << v);
  }
  return seen == 0xFF;
}

Lut8 Lut8::inverted() const {
  Lut8 inv;
  for (int x = 0; x < 8; ++x) inv.map[map[x]] = static_cast<std::uint8_t>(x);
  return inv;
}

std::uint8_t Lut8::coordinate(int k) const {
  std::uint8_t tt = 0;
  for (int x = 0; x < 8; ++x)
    if ((map[x] >> k) & 1) tt |= static_cast<std::uint8_t>(1u << x);
  return tt;
}

Gate3::Gate3(std::array<std::uint32_t, 3> lines_, Lut8 lut_)
    : lines(lines_), lut(lut_) {
  if (!(lines[0] < lines[1] && lines[1] < lines[2]))
    throw ValidationError("Gate3: lines must be strictly increasing");
  if (!lut.is_permutation())
    throw ValidationError("Gate3: lut is not a permutation of 0..7");
}

void apply_gate3(const Gate3& g, BitVec& state) {
  if (g.max_line() >= state.size())
    throw ValidationError("apply_gate3: gate line out of range");
  std::uint8_t v = 0;
  for (int k = 0; k < 3; ++k)
    if (state.test(g.lines[k])) v |= static_cast<std::uint8_t>(1u << k);
  const std::uint8_t w = g.lut(v);
  for (int k = 0; k < 3; ++k) state.set(g.lines[k], (w >> k) & 1u);
}

BitVec applied_gate3(const Gate3& g, const BitVec& state) {
  BitVec out = state;
  apply_gate3(g, out);
  return out;
}

std::uint64_t apply_gate3(const Gate3& g, std::uint64_t state,
                          std::uint32_t width) {
  if (g.max_line() >= width)
    throw ValidationError("apply_gate3: gate line out of range");
  std::uint8_t v = 0;
  for (int k = 0; k < 3; ++k)
    if ((state >> g.lines[k]) & 1u) v |= static_cast<std::uint8_t>(1u << k);
  const std::uint8_t w = g.lut(v);
  for (int k = 0; k < 3; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << g.lines[k];
    if ((w >> k) & 1u)
      state |= bit;
    else
      state &= ~bit;
  }
  return state;
}

std::uint8_t Affine3::apply(std::uint8_t x) const {
  std::uint8_t y = shift;
  for (int j = 0; j < 3; ++j)
    if ((x >> j) & 1u) y ^= cols[j];
  return y;
}

bool Affine3::invertible() const {
  // Rank-3 check over GF(2).
  std::array<std::uint8_t, 3> rows = cols;
  std::uint8_t used = 0;
  for (int bit = 0; bit < 3; ++bit) {
    int pivot = -1;
    for (int j = 0; j < 3; ++j) {
      if ((used >> j) & 1u) continue;
      if ((rows[j] >> bit) & 1u) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) return false;
    used |= static_cast<std::uint8_t>(1u << pivot);
    for (int j = 0; j < 3; ++j)
      if (j != pivot && ((rows[j] >> bit) & 1u)) rows[j] ^= rows[pivot];
  }
  return true;
}

Affine3 Affine3::inverted() const {
  if (!invertible()) throw ValidationError("Affine3::inverted: singular map");
  // y = Mx ^ c  =>  x = M^-1 y ^ M^-1 c. Columns of M^-1 come from the
  // inverted lut of the linear part.
  Affine3 lin{cols, 0};
  const Lut8 inv = lin.to_lut().inverted();
  Affine3 out;
  for (int j = 0; j < 3; ++j)
    out.cols[j] = inv(static_cast<std::uint8_t>(1u << j));
  out.shift = 0;
  out.shift = out.apply(shift);
  return out;
}

Lut8 Affine3::to_lut() const {
  Lut8 lut;
  for (int x = 0; x < 8; ++x)
    lut.map[x] = apply(static_cast<std::uint8_t>(x));
  return lut;
}

std::optional<Affine3> Affine3::from_lut(const Lut8& lut) {
  Affine3 a;
  a.shift = lut(0);
  for (int j = 0; j < 3; ++j)
    a.cols[j] = lut(static_cast<std::uint8_t>(1u << j)) ^ a.shift;
  if (a.to_lut() == lut) return a;
  return std::nullopt;
}

int Affine3::column_weight(int j) const {
  const std::uint8_t c = cols[j];
  return ((c >> 0) & 1) + ((c >> 1) & 1) + ((c >> 2) & 1);
}

AffineGate3::AffineGate3(std::array<std::uint32_t, 3> lines_, Affine3 map_)
    : lines(lines_), map(map_) {
  if (!(lines[0] < lines[1] && lines[1] < lines[2]))
    throw ValidationError("AffineGate3: lines must be strictly increasing");
  if (!map.invertible())
    throw ValidationError("AffineGate3: map is not invertible");
}

}  // namespace eoc
