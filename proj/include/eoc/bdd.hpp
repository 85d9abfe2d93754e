#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "eoc/bits.hpp"

namespace eoc {

using NodeId = std::uint32_t;
inline constexpr NodeId kFalseNode = 0;
inline constexpr NodeId kTrueNode = 1;

struct BddNode {
  std::uint32_t var;
  NodeId lo, hi;
};

/// Hash-consed node store. Reduction (no node with lo == hi, no duplicate
/// (var, lo, hi)) is enforced at mk(). A store and the Bdds built on it are
/// confined to one worker; independent stores may run in parallel.
class BddStore {
 public:
  BddStore();

  NodeId mk(std::uint32_t var, NodeId lo, NodeId hi);
  const BddNode& node(NodeId id) const { return nodes_[id]; }
  static bool is_terminal(NodeId id) { return id <= kTrueNode; }
  std::size_t store_size() const { return nodes_.size(); }

 private:
  std::vector<BddNode> nodes_;
  std::unordered_map<std::uint64_t, NodeId> unique_;
};

/// One Boolean function: a root in a store plus this function's own
/// variable order. Variables are bitline ids; along every root-to-terminal
/// path they appear in increasing order position. Two Bdds over the same
/// store and order represent equal functions iff their roots are equal.
struct Bdd {
  BddStore* store = nullptr;
  NodeId root = kFalseNode;
  std::vector<std::uint32_t> order;
};

Bdd bdd_const(BddStore& store, bool value);
Bdd bdd_var(BddStore& store, std::uint32_t var);

enum class BddOp { kAnd, kOr, kXor };

/// op(f, g) under the merged order. The operands' orders must interleave
/// consistently, else the call is refused.
Bdd bdd_apply(BddOp op, const Bdd& f, const Bdd& g);

/// tt8 is the 8-entry truth table of a 3-input combiner, indexed
/// f + 2g + 4h.
Bdd bdd_apply3(std::uint8_t tt8, const Bdd& f, const Bdd& g, const Bdd& h);

/// if f then g else h.
Bdd bdd_ite(const Bdd& f, const Bdd& g, const Bdd& h);

Bdd bdd_restrict(const Bdd& f, std::uint32_t var, bool value);

/// f with variable var replaced by the function g. Refused when the orders
/// cannot be merged after removing var.
Bdd bdd_compose(const Bdd& f, std::uint32_t var, const Bdd& g);

/// Same function, with var sifted to the end of the order by adjacent
/// swaps. No-op when var is absent.
Bdd bdd_reorder_var_last(const Bdd& f, std::uint32_t var);

/// f with input var negated: x -> f(x with bit var flipped). The decision
/// branches of the var nodes flip; node count is unchanged; involution.
Bdd bdd_flip_var_branches(const Bdd& f, std::uint32_t var);

/// NOT f via swapped terminals. Node count unchanged; involution.
Bdd bdd_swap_terminals(const Bdd& f);

/// Follows LO on 0 / HI on 1 from the root. Refuses when a node's variable
/// lies outside the assignment.
bool bdd_evaluate(const Bdd& f, const BitVec& assignment);

/// Reachable nodes including reachable terminals (a bare terminal counts 1).
std::size_t bdd_node_count(const Bdd& f);

/// Variables the function actually depends on, ascending.
std::vector<std::uint32_t> bdd_support(const Bdd& f);

/// Drops order entries the function does not depend on.
Bdd bdd_trim_order(const Bdd& f);

/// In-place expansion of variables by 3-bit coordinate functions: every
/// node labeled v in subs is replaced by the (at most 7-node) BDD of its
/// coordinate table over trio, grafted onto the node's LO/HI targets. Each
/// substituted variable's trio may contain v itself; the other trio members
/// must not occur in f's order, and trios must be pairwise disjoint. The
/// new order has each v replaced by its trio in place.
struct VarExpansion {
  std::array<std::uint32_t, 3> trio{};
  std::uint8_t coord_tt = 0;  // indexed x0 + 2 x1 + 4 x2 in trio order
};
Bdd bdd_expand_vars(const Bdd& f,
                    const std::map<std::uint32_t, VarExpansion>& subs);

/// Structural relabeling. The caller must keep relative positions intact;
/// used to retire temporary variable ids.
Bdd bdd_rename_vars(const Bdd& f,
                    const std::map<std::uint32_t, std::uint32_t>& renames,
                    std::vector<std::uint32_t> new_order);

/// Structural scan of the two reduction rules and the ordering discipline;
/// throws InternalError on violation. Test support.
void bdd_check_reduced_ordered(const Bdd& f);

/// Topologically sorted node list with terminals 0/1 plus the order list.
/// Identical structures serialize identically.
void serialize_bdd(const Bdd& f, std::ostream& os);
Bdd parse_bdd(std::istream& is, BddStore& store);

}  // namespace eoc
