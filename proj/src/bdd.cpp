#include "eoc/bdd.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "eoc/error.hpp"

namespace eoc {

namespace {

constexpr std::uint32_t kMaxVar = (1u << 16) - 1;
constexpr NodeId kMaxNode = (1u << 21) - 1;

std::uint64_t node_key(std::uint32_t var, NodeId lo, NodeId hi) {
  return (std::uint64_t{var} << 48) | (std::uint64_t{lo} << 24) |
         std::uint64_t{hi};
}

/// Position-of-variable lookup for one order.
class PosMap {
 public:
  explicit PosMap(const std::vector<std::uint32_t>& order) {
    for (std::uint32_t i = 0; i < order.size(); ++i) {
      const auto v = order[i];
      if (v >= pos_.size()) pos_.resize(v + 1, -1);
      pos_[v] = static_cast<int>(i);
    }
  }
  int pos(std::uint32_t var) const {
    if (var >= pos_.size() || pos_[var] < 0)
      throw InternalError("bdd: variable " + std::to_string(var) +
                          " missing from order");
    return pos_[var];
  }
  bool contains(std::uint32_t var) const {
    return var < pos_.size() && pos_[var] >= 0;
  }

 private:
  std::vector<int> pos_;
};

std::vector<std::uint32_t> merge_orders(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  PosMap pa(a), pb(b);
  std::vector<std::uint32_t> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size() && a[i] == b[j]) {
      out.push_back(a[i]);
      ++i;
      ++j;
    } else if (i < a.size() && !pb.contains(a[i])) {
      out.push_back(a[i]);
      ++i;
    } else if (j < b.size() && !pa.contains(b[j])) {
      out.push_back(b[j]);
      ++j;
    } else {
      throw ValidationError("bdd: variable orders conflict");
    }
  }
  return out;
}

void check_same_store(const Bdd& f, const Bdd& g) {
  if (f.store != g.store)
    throw ValidationError("bdd: operands from different stores");
}

}  // namespace

BddStore::BddStore() {
  nodes_.push_back({0, kFalseNode, kFalseNode});  // terminal false
  nodes_.push_back({0, kTrueNode, kTrueNode});    // terminal true
}

NodeId BddStore::mk(std::uint32_t var, NodeId lo, NodeId hi) {
  if (lo == hi) return lo;
  if (var > kMaxVar || lo > kMaxNode || hi > kMaxNode)
    throw InternalError("bdd: store limits exceeded");
  const std::uint64_t key = node_key(var, lo, hi);
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  const NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back({var, lo, hi});
  unique_.emplace(key, id);
  return id;
}

Bdd bdd_const(BddStore& store, bool value) {
  return Bdd{&store, value ? kTrueNode : kFalseNode, {}};
}

Bdd bdd_var(BddStore& store, std::uint32_t var) {
  return Bdd{&store, store.mk(var, kFalseNode, kTrueNode), {var}};
}

namespace {

/// Shared recursion for 2- and 3-operand combiners under a fixed order.
class ApplyContext {
 public:
  ApplyContext(BddStore& store, const PosMap& pos) : store_(store), pos_(pos) {}

  NodeId apply2(std::uint8_t tt4, NodeId f, NodeId g) {
    if (BddStore::is_terminal(f) && BddStore::is_terminal(g)) {
      const int idx = (f == kTrueNode ? 1 : 0) | (g == kTrueNode ? 2 : 0);
      return (tt4 >> idx) & 1 ? kTrueNode : kFalseNode;
    }
    const std::uint64_t key =
        (std::uint64_t{f} << 32) | (std::uint64_t{g} << 8) | tt4;
    auto it = memo2_.find(key);
    if (it != memo2_.end()) return it->second;
    const std::uint32_t v = top_var({f, g});
    const NodeId r = store_.mk(v, apply2(tt4, cof(f, v, false), cof(g, v, false)),
                               apply2(tt4, cof(f, v, true), cof(g, v, true)));
    memo2_.emplace(key, r);
    return r;
  }

  NodeId apply3(std::uint8_t tt8, NodeId f, NodeId g, NodeId h) {
    if (BddStore::is_terminal(f) && BddStore::is_terminal(g) &&
        BddStore::is_terminal(h)) {
      const int idx = (f == kTrueNode ? 1 : 0) | (g == kTrueNode ? 2 : 0) |
                      (h == kTrueNode ? 4 : 0);
      return (tt8 >> idx) & 1 ? kTrueNode : kFalseNode;
    }
    const std::uint64_t key = (std::uint64_t{f} << 42) |
                              (std::uint64_t{g} << 21) | h;
    auto it = memo3_.find(key);
    if (it != memo3_.end()) return it->second;
    const std::uint32_t v = top_var({f, g, h});
    const NodeId r =
        store_.mk(v,
                  apply3(tt8, cof(f, v, false), cof(g, v, false),
                         cof(h, v, false)),
                  apply3(tt8, cof(f, v, true), cof(g, v, true),
                         cof(h, v, true)));
    memo3_.emplace(key, r);
    return r;
  }

 private:
  std::uint32_t top_var(std::initializer_list<NodeId> ids) {
    int best = -1;
    std::uint32_t var = 0;
    for (NodeId id : ids) {
      if (BddStore::is_terminal(id)) continue;
      const auto& n = store_.node(id);
      const int p = pos_.pos(n.var);
      if (best < 0 || p < best) {
        best = p;
        var = n.var;
      }
    }
    if (best < 0) throw InternalError("bdd: top_var on terminals");
    return var;
  }

  NodeId cof(NodeId id, std::uint32_t var, bool hi) {
    if (BddStore::is_terminal(id)) return id;
    const auto& n = store_.node(id);
    if (n.var != var) return id;
    return hi ? n.hi : n.lo;
  }

  BddStore& store_;
  const PosMap& pos_;
  std::unordered_map<std::uint64_t, NodeId> memo2_;
  std::unordered_map<std::uint64_t, NodeId> memo3_;
};

}  // namespace

Bdd bdd_apply(BddOp op, const Bdd& f, const Bdd& g) {
  check_same_store(f, g);
  const std::uint8_t tt4 = op == BddOp::kAnd   ? 0b1000
                           : op == BddOp::kOr  ? 0b1110
                                               : 0b0110;  // xor
  auto order = merge_orders(f.order, g.order);
  PosMap pos(order);
  ApplyContext ctx(*f.store, pos);
  return Bdd{f.store, ctx.apply2(tt4, f.root, g.root), std::move(order)};
}

Bdd bdd_apply3(std::uint8_t tt8, const Bdd& f, const Bdd& g, const Bdd& h) {
  check_same_store(f, g);
  check_same_store(f, h);
  auto order = merge_orders(merge_orders(f.order, g.order), h.order);
  PosMap pos(order);
  ApplyContext ctx(*f.store, pos);
  return Bdd{f.store, ctx.apply3(tt8, f.root, g.root, h.root),
             std::move(order)};
}

Bdd bdd_ite(const Bdd& f, const Bdd& g, const Bdd& h) {
  return bdd_apply3(0xD8, f, g, h);  // index f + 2g + 4h
}

namespace {

NodeId restrict_rec(BddStore& store, NodeId id, std::uint32_t var, bool value,
                    std::unordered_map<NodeId, NodeId>& memo) {
  if (BddStore::is_terminal(id)) return id;
  auto it = memo.find(id);
  if (it != memo.end()) return it->second;
  const auto& n = store.node(id);
  NodeId r;
  if (n.var == var) {
    r = value ? n.hi : n.lo;
    // The chosen child may itself contain var only if ordering were broken;
    // reduced ordered BDDs cannot, so no recursion is needed below.
  } else {
    r = store.mk(n.var, restrict_rec(store, n.lo, var, value, memo),
                 restrict_rec(store, n.hi, var, value, memo));
  }
  memo.emplace(id, r);
  return r;
}

}  // namespace

Bdd bdd_restrict(const Bdd& f, std::uint32_t var, bool value) {
  std::unordered_map<NodeId, NodeId> memo;
  return Bdd{f.store, restrict_rec(*f.store, f.root, var, value, memo),
             f.order};
}

Bdd bdd_compose(const Bdd& f, std::uint32_t var, const Bdd& g) {
  check_same_store(f, g);
  if (std::find(f.order.begin(), f.order.end(), var) == f.order.end())
    return f;
  const Bdd f0 = bdd_restrict(f, var, false);
  const Bdd f1 = bdd_restrict(f, var, true);
  std::vector<std::uint32_t> base;
  for (auto v : f.order)
    if (v != var) base.push_back(v);
  auto order = merge_orders(base, g.order);
  PosMap pos(order);
  ApplyContext ctx(*f.store, pos);
  return Bdd{f.store, ctx.apply3(0xD8, g.root, f1.root, f0.root),
             std::move(order)};
}

namespace {

NodeId swap_adjacent_rec(BddStore& store, NodeId id, std::uint32_t a,
                         std::uint32_t b, const PosMap& pos, int level_a,
                         std::unordered_map<NodeId, NodeId>& memo) {
  if (BddStore::is_terminal(id)) return id;
  const auto& n = store.node(id);
  const int p = pos.pos(n.var);
  if (p > level_a) return id;  // at or below b: unchanged, it rises freely
  auto it = memo.find(id);
  if (it != memo.end()) return it->second;
  NodeId r;
  if (n.var == a) {
    // Split both children on b and rebuild with b on top.
    const auto cof = [&](NodeId c, bool hi) {
      if (BddStore::is_terminal(c)) return c;
      const auto& cn = store.node(c);
      if (cn.var != b) return c;
      return hi ? cn.hi : cn.lo;
    };
    const NodeId l0 = cof(n.lo, false), l1 = cof(n.lo, true);
    const NodeId h0 = cof(n.hi, false), h1 = cof(n.hi, true);
    r = store.mk(b, store.mk(a, l0, h0), store.mk(a, l1, h1));
  } else {
    r = store.mk(n.var,
                 swap_adjacent_rec(store, n.lo, a, b, pos, level_a, memo),
                 swap_adjacent_rec(store, n.hi, a, b, pos, level_a, memo));
  }
  memo.emplace(id, r);
  return r;
}

}  // namespace

Bdd bdd_reorder_var_last(const Bdd& f, std::uint32_t var) {
  auto it = std::find(f.order.begin(), f.order.end(), var);
  if (it == f.order.end()) return f;
  Bdd cur = f;
  std::size_t p = static_cast<std::size_t>(it - f.order.begin());
  while (p + 1 < cur.order.size()) {
    const std::uint32_t a = cur.order[p];
    const std::uint32_t b = cur.order[p + 1];
    PosMap pos(cur.order);
    std::unordered_map<NodeId, NodeId> memo;
    const NodeId root = swap_adjacent_rec(*cur.store, cur.root, a, b, pos,
                                          static_cast<int>(p), memo);
    std::swap(cur.order[p], cur.order[p + 1]);
    cur.root = root;
    ++p;
  }
  return cur;
}

namespace {

NodeId flip_rec(BddStore& store, NodeId id, std::uint32_t var,
                std::unordered_map<NodeId, NodeId>& memo) {
  if (BddStore::is_terminal(id)) return id;
  auto it = memo.find(id);
  if (it != memo.end()) return it->second;
  const auto& n = store.node(id);
  const NodeId lo = flip_rec(store, n.lo, var, memo);
  const NodeId hi = flip_rec(store, n.hi, var, memo);
  const NodeId r =
      n.var == var ? store.mk(n.var, hi, lo) : store.mk(n.var, lo, hi);
  memo.emplace(id, r);
  return r;
}

NodeId negate_rec(BddStore& store, NodeId id,
                  std::unordered_map<NodeId, NodeId>& memo) {
  if (id == kFalseNode) return kTrueNode;
  if (id == kTrueNode) return kFalseNode;
  auto it = memo.find(id);
  if (it != memo.end()) return it->second;
  const auto& n = store.node(id);
  const NodeId r = store.mk(n.var, negate_rec(store, n.lo, memo),
                            negate_rec(store, n.hi, memo));
  memo.emplace(id, r);
  return r;
}

}  // namespace

Bdd bdd_flip_var_branches(const Bdd& f, std::uint32_t var) {
  std::unordered_map<NodeId, NodeId> memo;
  return Bdd{f.store, flip_rec(*f.store, f.root, var, memo), f.order};
}

Bdd bdd_swap_terminals(const Bdd& f) {
  std::unordered_map<NodeId, NodeId> memo;
  return Bdd{f.store, negate_rec(*f.store, f.root, memo), f.order};
}

bool bdd_evaluate(const Bdd& f, const BitVec& assignment) {
  NodeId id = f.root;
  while (!BddStore::is_terminal(id)) {
    const auto& n = f.store->node(id);
    if (n.var >= assignment.size())
      throw ValidationError("bdd_evaluate: assignment misses variable " +
                            std::to_string(n.var));
    id = assignment.test(n.var) ? n.hi : n.lo;
  }
  return id == kTrueNode;
}

std::size_t bdd_node_count(const Bdd& f) {
  std::set<NodeId> seen;
  std::vector<NodeId> stack{f.root};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    if (!BddStore::is_terminal(id)) {
      stack.push_back(f.store->node(id).lo);
      stack.push_back(f.store->node(id).hi);
    }
  }
  return seen.size();
}

std::vector<std::uint32_t> bdd_support(const Bdd& f) {
  std::set<std::uint32_t> vars;
  std::set<NodeId> seen;
  std::vector<NodeId> stack{f.root};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (BddStore::is_terminal(id) || !seen.insert(id).second) continue;
    const auto& n = f.store->node(id);
    vars.insert(n.var);
    stack.push_back(n.lo);
    stack.push_back(n.hi);
  }
  return {vars.begin(), vars.end()};
}

Bdd bdd_trim_order(const Bdd& f) {
  const auto support = bdd_support(f);
  std::set<std::uint32_t> keep(support.begin(), support.end());
  Bdd out = f;
  out.order.clear();
  for (auto v : f.order)
    if (keep.count(v)) out.order.push_back(v);
  return out;
}

namespace {

NodeId graft_coordinate(BddStore& store,
                        const std::array<std::uint32_t, 3>& trio,
                        std::uint8_t tt, NodeId lo_target, NodeId hi_target,
                        int depth, int idx) {
  if (depth == 3) return (tt >> idx) & 1 ? hi_target : lo_target;
  const NodeId l =
      graft_coordinate(store, trio, tt, lo_target, hi_target, depth + 1, idx);
  const NodeId h = graft_coordinate(store, trio, tt, lo_target, hi_target,
                                    depth + 1, idx | (1 << depth));
  return store.mk(trio[depth], l, h);
}

}  // namespace

Bdd bdd_expand_vars(const Bdd& f,
                    const std::map<std::uint32_t, VarExpansion>& subs) {
  // Preconditions: fresh trio members absent from the order, trios disjoint.
  std::set<std::uint32_t> order_vars(f.order.begin(), f.order.end());
  std::set<std::uint32_t> introduced;
  for (const auto& [v, ex] : subs) {
    if (!order_vars.count(v))
      throw InternalError("bdd_expand_vars: variable not in order");
    for (auto t : ex.trio) {
      if (t != v && order_vars.count(t))
        throw InternalError("bdd_expand_vars: trio member already in order");
      if (!introduced.insert(t).second)
        throw InternalError("bdd_expand_vars: trios overlap");
    }
  }
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> rec = [&](NodeId id) -> NodeId {
    if (BddStore::is_terminal(id)) return id;
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const auto& n = f.store->node(id);
    const NodeId lo = rec(n.lo);
    const NodeId hi = rec(n.hi);
    NodeId r;
    const auto sub = subs.find(n.var);
    if (sub != subs.end()) {
      r = graft_coordinate(*f.store, sub->second.trio, sub->second.coord_tt,
                           lo, hi, 0, 0);
    } else {
      r = f.store->mk(n.var, lo, hi);
    }
    memo.emplace(id, r);
    return r;
  };
  Bdd out;
  out.store = f.store;
  out.root = rec(f.root);
  for (auto v : f.order) {
    const auto sub = subs.find(v);
    if (sub == subs.end()) {
      out.order.push_back(v);
    } else {
      for (auto t : sub->second.trio) out.order.push_back(t);
    }
  }
  return out;
}

Bdd bdd_rename_vars(const Bdd& f,
                    const std::map<std::uint32_t, std::uint32_t>& renames,
                    std::vector<std::uint32_t> new_order) {
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> rec = [&](NodeId id) -> NodeId {
    if (BddStore::is_terminal(id)) return id;
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const auto& n = f.store->node(id);
    const auto ren = renames.find(n.var);
    const std::uint32_t var = ren == renames.end() ? n.var : ren->second;
    const NodeId r = f.store->mk(var, rec(n.lo), rec(n.hi));
    memo.emplace(id, r);
    return r;
  };
  return Bdd{f.store, rec(f.root), std::move(new_order)};
}

void bdd_check_reduced_ordered(const Bdd& f) {
  PosMap pos(f.order);
  std::set<NodeId> seen;
  std::set<std::uint64_t> shapes;
  std::function<void(NodeId)> rec = [&](NodeId id) {
    if (BddStore::is_terminal(id) || !seen.insert(id).second) return;
    const auto& n = f.store->node(id);
    if (n.lo == n.hi) throw InternalError("bdd: unreduced node (lo == hi)");
    if (!shapes.insert(node_key(n.var, n.lo, n.hi)).second)
      throw InternalError("bdd: duplicate node shape");
    for (NodeId c : {n.lo, n.hi}) {
      if (!BddStore::is_terminal(c)) {
        if (pos.pos(f.store->node(c).var) <= pos.pos(n.var))
          throw InternalError("bdd: ordering violated");
      }
    }
    rec(n.lo);
    rec(n.hi);
  };
  rec(f.root);
}

void serialize_bdd(const Bdd& f, std::ostream& os) {
  os << "order";
  for (auto v : f.order) os << " " << v;
  os << "\n";
  // Deterministic ids: postorder, lo before hi, terminals fixed at 0/1.
  std::unordered_map<NodeId, std::uint32_t> ids{{kFalseNode, 0},
                                                {kTrueNode, 1}};
  std::vector<std::array<std::uint32_t, 4>> rows;
  std::function<std::uint32_t(NodeId)> assign = [&](NodeId id) {
    auto it = ids.find(id);
    if (it != ids.end()) return it->second;
    const auto& n = f.store->node(id);
    const std::uint32_t lo = assign(n.lo);
    const std::uint32_t hi = assign(n.hi);
    const std::uint32_t mine = static_cast<std::uint32_t>(ids.size());
    ids.emplace(id, mine);
    rows.push_back({mine, n.var, lo, hi});
    return mine;
  };
  const std::uint32_t root = assign(f.root);
  os << "nodes " << rows.size() << "\n";
  for (const auto& r : rows)
    os << "node " << r[0] << " " << r[1] << " " << r[2] << " " << r[3]
       << "\n";
  os << "root " << root << "\n";
}

Bdd parse_bdd(std::istream& is, BddStore& store) {
  std::string kw;
  if (!(is >> kw) || kw != "order") throw IoError("bdd: expected order line");
  Bdd out;
  out.store = &store;
  {
    std::string rest;
    std::getline(is, rest);
    std::istringstream rs(rest);
    std::uint32_t v;
    while (rs >> v) out.order.push_back(v);
  }
  std::size_t count = 0;
  if (!(is >> kw >> count) || kw != "nodes")
    throw IoError("bdd: expected nodes line");
  std::unordered_map<std::uint32_t, NodeId> ids{{0, kFalseNode},
                                                {1, kTrueNode}};
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t id, var, lo, hi;
    if (!(is >> kw >> id >> var >> lo >> hi) || kw != "node")
      throw IoError("bdd: bad node line");
    if (!ids.count(lo) || !ids.count(hi))
      throw IoError("bdd: node references undefined child");
    ids[id] = store.mk(var, ids[lo], ids[hi]);
  }
  std::uint32_t root;
  if (!(is >> kw >> root) || kw != "root" || !ids.count(root))
    throw IoError("bdd: bad root line");
  out.root = ids[root];
  return out;
}

}  // namespace eoc
