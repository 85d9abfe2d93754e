#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eoc/gate.hpp"

namespace eoc {

/// Named collection of 3-bit gates in canonical bitline-local lut form.
struct GateSet {
  std::string name;
  std::vector<Lut8> members;

  std::size_t size() const { return members.size(); }
  bool contains(const Lut8& lut) const;
};

/// True iff the gate is affine (y = Mx ^ c) and every single-bit input flip
/// changes at least two output bits, i.e. every column of M has Hamming
/// weight >= 2.
bool is_inflationary(const Lut8& lut);
bool is_inflationary(const Affine3& map);

/// All invertible affine maps built from columns of weight >= 2, times the
/// eight shifts. Exactly 144 by construction; a mismatch is a hard failure.
std::vector<Affine3> enumerate_inflationary_maps();
GateSet enumerate_inflationary();

enum class Topology { kA, kB, kC, kD };
char topology_label(Topology t);

/// CNOT-structure class of an inflationary gate. Classes are the orbits of
/// the linear part under simultaneous bitline relabeling; sizes come out
/// 24/24/48/48 over the full set. Invariant under bitline permutation and
/// control-polarity (shift) changes. Refuses non-inflationary input.
Topology classify_topology(const Affine3& map);
Topology classify_topology(const Lut8& lut);

std::map<Topology, int> topology_histogram(const std::vector<Affine3>& maps);

enum class NonlinearPredicate { kStrict, kCoordinatewise, kExternalList };

/// Scans all 40320 elements of S8.
///  - strict: every nonzero linear combination of the three output bits is a
///    non-affine function of the inputs;
///  - coordinatewise: each of the three output coordinates is non-affine.
GateSet enumerate_super_nonlinear(NonlinearPredicate pred);

/// Cardinalities of both built-in scans, for reporting against the expected
/// nonlinear-set size.
struct NonlinearScan {
  std::size_t scanned = 0;
  std::size_t strict = 0;
  std::size_t coordinatewise = 0;
};
NonlinearScan scan_super_nonlinear();

inline constexpr std::size_t kExpectedNonlinearCount = 10752;

/// Gate-set file: one lut per line as 8 space-separated integers 0..7.
/// The loader validates bijectivity of every line.
GateSet load_gate_set(const std::string& path, const std::string& name);
void save_gate_set(const GateSet& set, const std::string& path);

}  // namespace eoc
