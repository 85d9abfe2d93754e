#include "eoc/rewrite.hpp"

#include <algorithm>

namespace eoc {

namespace {

bool controls_contain_line(const std::vector<Control>& controls,
                           std::uint32_t line) {
  return std::any_of(controls.begin(), controls.end(),
                     [line](const Control& c) { return c.line == line; });
}

/// Tail minus the literal sitting on `line` (which must be present).
std::vector<Control> tail_without(const std::vector<Control>& controls,
                                  std::uint32_t line) {
  std::vector<Control> out;
  out.reserve(controls.size() - 1);
  for (const auto& c : controls)
    if (c.line != line) out.push_back(c);
  return out;
}

}  // namespace

CollisionKind classify_collision(const ControlledGate& g,
                                 const ControlledGate& h) {
  if (g.target() == h.target()) return CollisionKind::kHeadOnHead;
  const bool g_head_in_h = controls_contain_line(h.controls(), g.target());
  const bool h_head_in_g = controls_contain_line(g.controls(), h.target());
  if (g_head_in_h && h_head_in_g) return CollisionKind::kTwoHead;
  if (g_head_in_h || h_head_in_g) return CollisionKind::kOneHead;
  return CollisionKind::kNoCollision;
}

std::optional<std::vector<Control>> merge_controls(
    std::span<const Control> a, std::span<const Control> b) {
  std::vector<Control> out(a.begin(), a.end());
  for (const auto& c : b) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Control& o) {
      return o.line == c.line;
    });
    if (it == out.end()) {
      out.push_back(c);
    } else if (it->negated != c.negated) {
      return std::nullopt;  // x * !x: the product never fires
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CommuteResult commute_past(const ControlledGate& g, const ControlledGate& h) {
  CommuteResult res;
  res.kind = classify_collision(g, h);
  switch (res.kind) {
    case CollisionKind::kNoCollision:
    case CollisionKind::kHeadOnHead:
      break;
    case CollisionKind::kOneHead: {
      // The gate whose tail is hit re-emits a copy of itself carrying the
      // other gate's tail as an extra product factor.
      if (controls_contain_line(g.controls(), h.target())) {
        auto merged = merge_controls(
            h.controls(), tail_without(g.controls(), h.target()));
        if (merged) res.debris.emplace_back(g.target(), std::move(*merged));
      } else {
        auto merged = merge_controls(
            g.controls(), tail_without(h.controls(), g.target()));
        if (merged) res.debris.emplace_back(h.target(), std::move(*merged));
      }
      break;
    }
    case CollisionKind::kTwoHead: {
      auto da = merge_controls(h.controls(),
                               tail_without(g.controls(), h.target()));
      auto db = merge_controls(g.controls(),
                               tail_without(h.controls(), g.target()));
      if (da) res.debris.emplace_back(h.target(), std::move(*da));
      if (db) res.debris.emplace_back(g.target(), std::move(*db));
      break;
    }
  }
  return res;
}

namespace {

/// Tries the reducing rules on an adjacent pair; returns the replacement
/// when one fires.
std::optional<std::vector<ControlledGate>> reduce_pair(
    const ControlledGate& a, const ControlledGate& b) {
  if (a == b) return std::vector<ControlledGate>{};  // annihilation
  if (a.target() != b.target()) return std::nullopt;

  const auto& ca = a.controls();
  const auto& cb = b.controls();

  if (ca.size() == cb.size()) {
    // Same lines, exactly one polarity flipped: that control drops out.
    int mismatches = 0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < ca.size(); ++i) {
      if (ca[i].line != cb[i].line) return std::nullopt;
      if (ca[i].negated != cb[i].negated) {
        ++mismatches;
        at = i;
      }
    }
    if (mismatches == 1) {
      std::vector<Control> rest;
      for (std::size_t i = 0; i < ca.size(); ++i)
        if (i != at) rest.push_back(ca[i]);
      return std::vector<ControlledGate>{
          ControlledGate(a.target(), std::move(rest))};
    }
    return std::nullopt;
  }

  // Subset pair: tails equal except one extra literal on the bigger gate;
  // the pair collapses to the bigger gate with that literal's polarity
  // reversed.
  const ControlledGate& big = ca.size() > cb.size() ? a : b;
  const ControlledGate& small = ca.size() > cb.size() ? b : a;
  if (big.controls().size() != small.controls().size() + 1)
    return std::nullopt;
  std::optional<Control> extra;
  std::size_t si = 0;
  for (const auto& c : big.controls()) {
    if (si < small.controls().size() && small.controls()[si] == c) {
      ++si;
    } else if (!extra) {
      extra = c;
    } else {
      return std::nullopt;
    }
  }
  if (si != small.controls().size() || !extra) return std::nullopt;
  auto tail = small.controls();
  tail.push_back(Control{extra->line, !extra->negated});
  return std::vector<ControlledGate>{
      ControlledGate(big.target(), std::move(tail))};
}

}  // namespace

Circuit simplify(const Circuit& c) {
  Circuit out(c.width);
  out.registers = c.registers;
  out.gates = c.gates;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < out.gates.size(); ++i) {
      if (!std::holds_alternative<ControlledGate>(out.gates[i]) ||
          !std::holds_alternative<ControlledGate>(out.gates[i + 1]))
        continue;
      auto repl = reduce_pair(std::get<ControlledGate>(out.gates[i]),
                              std::get<ControlledGate>(out.gates[i + 1]));
      if (!repl) continue;
      out.gates.erase(out.gates.begin() + static_cast<long>(i),
                      out.gates.begin() + static_cast<long>(i) + 2);
      for (auto it = repl->rbegin(); it != repl->rend(); ++it)
        out.gates.insert(out.gates.begin() + static_cast<long>(i), *it);
      changed = true;
      break;
    }
  }
  return out;
}

Circuit factorize_with_split(const ControlledGate& gate,
                             const std::vector<bool>& split_mask,
                             std::uint32_t ancilla, std::uint32_t width) {
  if (split_mask.size() != gate.arity())
    throw ValidationError("factorize_with_split: mask size mismatch");
  if (ancilla == gate.target() ||
      controls_contain_line(gate.controls(), ancilla))
    throw ValidationError("factorize_with_split: ancilla overlaps the gate");
  std::vector<Control> x_part, y_part;
  for (std::size_t i = 0; i < gate.arity(); ++i)
    (split_mask[i] ? y_part : x_part).push_back(gate.controls()[i]);
  if (x_part.empty() || y_part.empty())
    throw ValidationError("factorize_with_split: both parts must be nonempty");

  x_part.push_back(Control{ancilla, false});
  const ControlledGate moved(ancilla, std::move(y_part));
  const ControlledGate kept(gate.target(), std::move(x_part));

  // gate == [moved, kept, moved, kept]: the ancilla picks up the Y product,
  // the kept gate fires through it twice, and the second pass restores the
  // ancilla while the target accumulates X*Y exactly once.
  Circuit out(width);
  out.push(moved);
  out.push(kept);
  out.push(moved);
  out.push(kept);
  return out;
}

Circuit factorize(const ControlledGate& gate, std::size_t max_controls,
                  std::span<const std::uint32_t> ancillas,
                  std::uint32_t width) {
  if (max_controls < 2)
    throw ValidationError("factorize: max_controls must be at least 2");
  if (gate.max_line() >= width)
    throw ValidationError("factorize: gate exceeds width");
  if (gate.arity() <= max_controls) {
    Circuit out(width);
    out.push(gate);
    return out;
  }
  std::uint32_t ancilla = 0;
  bool found = false;
  std::vector<std::uint32_t> rest;
  for (std::size_t i = 0; i < ancillas.size(); ++i) {
    const std::uint32_t a = ancillas[i];
    if (!found && a != gate.target() &&
        !controls_contain_line(gate.controls(), a) && a < width) {
      ancilla = a;
      found = true;
    } else {
      rest.push_back(a);
    }
  }
  if (!found)
    throw ValidationError("factorize: no usable ancilla line available");

  // Keep max_controls-1 literals on the target piece; the rest move to the
  // ancilla piece and are split further if still too wide.
  std::vector<bool> mask(gate.arity(), true);
  for (std::size_t i = 0; i + 1 < max_controls; ++i) mask[i] = false;
  const Circuit step = factorize_with_split(gate, mask, ancilla, width);

  Circuit out(width);
  for (const auto& g : step.gates) {
    const auto& cg = std::get<ControlledGate>(g);
    if (cg.arity() <= max_controls)
      out.push(cg);
    else
      out.append(factorize(cg, max_controls, rest, width));
  }
  return out;
}

}  // namespace eoc
