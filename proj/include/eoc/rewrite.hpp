#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eoc/circuit.hpp"

namespace eoc {

enum class CollisionKind {
  kNoCollision,   // neither target lies in the other's controls
  kHeadOnHead,    // same target line
  kOneHead,       // exactly one target lies in the other's controls
  kTwoHead,       // each target lies in the other's controls
};

CollisionKind classify_collision(const ControlledGate& g,
                                 const ControlledGate& h);

/// Merge of two literal sets into one product control. Returns nullopt when
/// the product contains x and NOT x on the same line (identically false, so
/// a gate controlled by it is the identity). Duplicate literals collapse.
std::optional<std::vector<Control>> merge_controls(
    std::span<const Control> a, std::span<const Control> b);

struct CommuteResult {
  CollisionKind kind;
  std::vector<ControlledGate> debris;
};

/// Order interchange: executing [g, h] equals executing [h, debris..., g]
/// on every state. Commuting pairs produce empty debris; one-head pairs one
/// debris gate with the product control; two-head pairs two.
CommuteResult commute_past(const ControlledGate& g, const ControlledGate& h);

/// Repeatedly applies the reducing equivalences to adjacent same-target
/// pairs until none fires:
///   - annihilation of identical gates,
///   - control elimination when tails differ in exactly one polarity,
///   - collapse of a subset pair into one gate with the extra control's
///     polarity reversed.
/// Polarity mutations that do not shrink (gate count, control count) are
/// never applied, which makes termination immediate. Gate3 entries are left
/// untouched. The truth table is preserved.
Circuit simplify(const Circuit& c);

/// One factorization step: the gate's tail is split into X (controls where
/// split_mask is false) and Y (controls where split_mask is true); Y moves
/// onto the ancilla line. The returned four gates are equivalent to the
/// input gate and leave the ancilla as they found it, clean or dirty.
Circuit factorize_with_split(const ControlledGate& gate,
                             const std::vector<bool>& split_mask,
                             std::uint32_t ancilla, std::uint32_t width);

/// Splits a many-control gate into gates of at most max_controls controls
/// (max_controls >= 2), consuming ancilla lines as needed. Throws when no
/// usable ancilla remains.
Circuit factorize(const ControlledGate& gate, std::size_t max_controls,
                  std::span<const std::uint32_t> ancillas,
                  std::uint32_t width);

}  // namespace eoc
