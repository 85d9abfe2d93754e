#include "eoc/gateset.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "eoc/error.hpp"

namespace eoc {

bool GateSet::contains(const Lut8& lut) const {
  return std::find(members.begin(), members.end(), lut) != members.end();
}

bool is_inflationary(const Affine3& map) {
  if (!map.invertible()) return false;
  for (int j = 0; j < 3; ++j)
    if (map.column_weight(j) < 2) return false;
  return true;
}

bool is_inflationary(const Lut8& lut) {
  const auto map = Affine3::from_lut(lut);
  return map && is_inflationary(*map);
}

std::vector<Affine3> enumerate_inflationary_maps() {
  // Candidate columns: the four 3-bit masks of weight >= 2.
  static constexpr std::array<std::uint8_t, 4> kCols{3, 5, 6, 7};
  std::vector<Affine3> maps;
  for (auto c0 : kCols)
    for (auto c1 : kCols)
      for (auto c2 : kCols) {
        Affine3 m{{c0, c1, c2}, 0};
        if (!m.invertible()) continue;
        for (std::uint8_t shift = 0; shift < 8; ++shift)
          maps.push_back(Affine3{{c0, c1, c2}, shift});
      }
  if (maps.size() != 144)
    throw InternalError("inflationary enumeration produced " +
                        std::to_string(maps.size()) + " gates, expected 144");
  return maps;
}

GateSet enumerate_inflationary() {
  GateSet set;
  set.name = "inflationary";
  for (const auto& m : enumerate_inflationary_maps())
    set.members.push_back(m.to_lut());
  return set;
}

char topology_label(Topology t) {
  switch (t) {
    case Topology::kA: return 'A';
    case Topology::kB: return 'B';
    case Topology::kC: return 'C';
    case Topology::kD: return 'D';
  }
  return '?';
}

namespace {

std::uint16_t encode_matrix(const std::array<std::uint8_t, 3>& cols) {
  return static_cast<std::uint16_t>(cols[0] | (cols[1] << 3) |
                                    (cols[2] << 6));
}

/// Conjugates the linear part by a permutation of the three bitlines:
/// rows and columns are relabeled together.
std::array<std::uint8_t, 3> permute_matrix(
    const std::array<std::uint8_t, 3>& cols,
    const std::array<int, 3>& perm) {
  std::array<std::uint8_t, 3> out{0, 0, 0};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i)
      if ((cols[j] >> i) & 1u)
        out[perm[j]] |= static_cast<std::uint8_t>(1u << perm[i]);
  return out;
}

/// Smallest matrix encoding over the relabeling orbit, plus the orbit size.
std::pair<std::uint16_t, int> orbit_signature(
    const std::array<std::uint8_t, 3>& cols) {
  static constexpr std::array<std::array<int, 3>, 6> kPerms{{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<std::uint16_t> orbit;
  for (const auto& p : kPerms)
    orbit.push_back(encode_matrix(permute_matrix(cols, p)));
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return {orbit.front(), static_cast<int>(orbit.size())};
}

}  // namespace

Topology classify_topology(const Affine3& map) {
  if (!is_inflationary(map))
    throw ValidationError("classify_topology: gate is not inflationary");
  // The 18 linear parts fall into relabeling orbits of sizes {3, 3, 6, 6}.
  // Orbits are ordered by (size, canonical representative) and labeled
  // A, B (the two size-3 orbits) and C, D (the two size-6 orbits).
  struct OrbitKey {
    int size;
    std::uint16_t repr;
    bool operator<(const OrbitKey& o) const {
      return size != o.size ? size < o.size : repr < o.repr;
    }
    bool operator==(const OrbitKey& o) const = default;
  };
  static const std::vector<OrbitKey> kOrbits = [] {
    std::vector<OrbitKey> keys;
    for (auto c0 : std::array<std::uint8_t, 4>{3, 5, 6, 7})
      for (auto c1 : std::array<std::uint8_t, 4>{3, 5, 6, 7})
        for (auto c2 : std::array<std::uint8_t, 4>{3, 5, 6, 7}) {
          Affine3 m{{c0, c1, c2}, 0};
          if (!m.invertible() || !is_inflationary(m)) continue;
          const auto [repr, size] = orbit_signature(m.cols);
          keys.push_back({size, repr});
        }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    if (keys.size() != 4)
      throw InternalError("topology classification: expected 4 orbits");
    return keys;
  }();
  const auto [repr, size] = orbit_signature(map.cols);
  const OrbitKey key{size, repr};
  for (std::size_t i = 0; i < kOrbits.size(); ++i)
    if (kOrbits[i] == key) return static_cast<Topology>(i);
  throw InternalError("topology classification: orbit not found");
}

Topology classify_topology(const Lut8& lut) {
  const auto map = Affine3::from_lut(lut);
  if (!map) throw ValidationError("classify_topology: gate is not affine");
  return classify_topology(*map);
}

std::map<Topology, int> topology_histogram(const std::vector<Affine3>& maps) {
  std::map<Topology, int> hist;
  for (const auto& m : maps) hist[classify_topology(m)]++;
  return hist;
}

namespace {

/// Truth table (8-entry bitmask) of one linear combination of outputs.
std::uint8_t combination_table(const Lut8& lut, std::uint8_t mask) {
  std::uint8_t tt = 0;
  for (int x = 0; x < 8; ++x) {
    const std::uint8_t y = lut.map[x] & mask;
    const int parity = ((y >> 0) ^ (y >> 1) ^ (y >> 2)) & 1;
    if (parity) tt |= static_cast<std::uint8_t>(1u << x);
  }
  return tt;
}

bool table_is_affine(std::uint8_t tt) {
  const int c = tt & 1;
  // Affine over 3 variables iff f(x)^f(0) is linear: check additivity.
  auto f = [tt](int x) { return (tt >> x) & 1; };
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y)
      if (((f(x ^ y) ^ c) ^ (f(x) ^ c) ^ (f(y) ^ c)) != 0) return false;
  return true;
}

template <typename Pred>
GateSet scan_s8(const std::string& name, Pred pred) {
  GateSet set;
  set.name = name;
  std::array<std::uint8_t, 8> perm{0, 1, 2, 3, 4, 5, 6, 7};
  do {
    Lut8 lut;
    lut.map = perm;
    if (pred(lut)) set.members.push_back(lut);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return set;
}

bool strict_nonlinear(const Lut8& lut) {
  for (std::uint8_t mask = 1; mask < 8; ++mask)
    if (table_is_affine(combination_table(lut, mask))) return false;
  return true;
}

bool coordinatewise_nonlinear(const Lut8& lut) {
  for (int k = 0; k < 3; ++k)
    if (table_is_affine(combination_table(
            lut, static_cast<std::uint8_t>(1u << k))))
      return false;
  return true;
}

}  // namespace

GateSet enumerate_super_nonlinear(NonlinearPredicate pred) {
  switch (pred) {
    case NonlinearPredicate::kStrict:
      return scan_s8("super-nonlinear-strict", strict_nonlinear);
    case NonlinearPredicate::kCoordinatewise:
      return scan_s8("super-nonlinear-coordinatewise",
                     coordinatewise_nonlinear);
    case NonlinearPredicate::kExternalList:
      throw ValidationError(
          "enumerate_super_nonlinear: external list requires a file; use "
          "load_gate_set");
  }
  throw ValidationError("enumerate_super_nonlinear: unknown predicate");
}

NonlinearScan scan_super_nonlinear() {
  NonlinearScan r;
  std::array<std::uint8_t, 8> perm{0, 1, 2, 3, 4, 5, 6, 7};
  do {
    ++r.scanned;
    Lut8 lut;
    lut.map = perm;
    if (strict_nonlinear(lut)) ++r.strict;
    if (coordinatewise_nonlinear(lut)) ++r.coordinatewise;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r;
}

GateSet load_gate_set(const std::string& path, const std::string& name) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open gate-set file " + path);
  GateSet set;
  set.name = name;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::vector<int> vals;
    int v;
    while (is >> v) vals.push_back(v);
    if (vals.empty()) continue;
    if (vals.size() != 8)
      throw ValidationError("gate-set line " + std::to_string(lineno) +
                            ": expected 8 entries");
    Lut8 lut;
    for (int k = 0; k < 8; ++k) {
      if (vals[k] < 0 || vals[k] > 7)
        throw ValidationError("gate-set line " + std::to_string(lineno) +
                              ": entry out of range");
      lut.map[k] = static_cast<std::uint8_t>(vals[k]);
    }
    if (!lut.is_permutation())
      throw ValidationError("gate-set line " + std::to_string(lineno) +
                            ": lut is not a bijection");
    set.members.push_back(lut);
  }
  return set;
}

void save_gate_set(const GateSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write gate-set file " + path);
  for (const auto& lut : set.members) {
    for (int k = 0; k < 8; ++k) out << int(lut.map[k]) << (k == 7 ? "" : " ");
    out << "\n";
  }
  if (!out) throw IoError("error writing " + path);
}

}  // namespace eoc
