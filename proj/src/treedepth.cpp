#include "ascentlab/treedepth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

namespace ascentlab {

void ConstraintGraph::add_vertex(VarId v) { adj_[v]; }

void ConstraintGraph::add_edge(VarId u, VarId v) {
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  adj_[u].insert(v);
  adj_[v].insert(u);
}

bool ConstraintGraph::has_edge(VarId u, VarId v) const {
  auto it = adj_.find(u);
  return it != adj_.end() && it->second.count(v) != 0;
}

const std::set<VarId>& ConstraintGraph::neighbors(VarId v) const {
  static const std::set<VarId> kEmpty;
  auto it = adj_.find(v);
  return it == adj_.end() ? kEmpty : it->second;
}

std::vector<VarId> ConstraintGraph::vertices() const {
  std::vector<VarId> vs;
  vs.reserve(adj_.size());
  for (const auto& [v, nb] : adj_) vs.push_back(v);
  return vs;
}

std::vector<std::pair<VarId, VarId>> ConstraintGraph::edges() const {
  std::vector<std::pair<VarId, VarId>> es;
  for (const auto& [v, nb] : adj_)
    for (VarId u : nb)
      if (v < u) es.emplace_back(v, u);
  return es;
}

std::size_t ConstraintGraph::num_edges() const {
  std::size_t twice = 0;
  for (const auto& [v, nb] : adj_) twice += nb.size();
  return twice / 2;
}

ConstraintGraph constraint_graph(const Instance& inst) {
  ConstraintGraph g;
  for (const auto& [id, dom] : inst.variables()) g.add_vertex(id);
  for (const Constraint& c : inst.constraints())
    for (std::size_t i = 0; i < c.scope.size(); ++i)
      for (std::size_t j = i + 1; j < c.scope.size(); ++j)
        g.add_edge(c.scope[i], c.scope[j]);
  return g;
}

TreedepthDecomposition::TreedepthDecomposition(std::map<VarId, VarId> parent)
    : parent_(std::move(parent)) {
  for (const auto& [child, par] : parent_) {
    if (par == 0) continue;
    if (!parent_.count(par))
      throw std::invalid_argument("parent " + std::to_string(par) +
                                  " is not a vertex of the forest");
  }
  // acyclicity: walking up from any vertex must terminate
  for (const auto& [child, par] : parent_) {
    int steps = 0;
    for (VarId v = child; v != 0; v = parent_.at(v)) {
      if (++steps > static_cast<int>(parent_.size()))
        throw std::invalid_argument("parent mapping contains a cycle");
    }
  }
}

VarId TreedepthDecomposition::parent(VarId v) const {
  auto it = parent_.find(v);
  if (it == parent_.end())
    throw std::invalid_argument("vertex " + std::to_string(v) +
                                " not in the forest");
  return it->second;
}

int TreedepthDecomposition::height() const {
  int h = 0;
  for (const auto& [v, par] : parent_) h = std::max(h, depth(v));
  return h;
}

int TreedepthDecomposition::depth(VarId v) const {
  int d = 0;
  for (VarId p = parent(v); p != 0; p = parent(p)) ++d;
  return d;
}

bool TreedepthDecomposition::is_ancestor(VarId a, VarId b) const {
  for (VarId p = parent(b); p != 0; p = parent(p))
    if (p == a) return true;
  return false;
}

std::vector<VarId> TreedepthDecomposition::ancestors(VarId v) const {
  std::vector<VarId> up;
  for (VarId p = parent(v); p != 0; p = parent(p)) up.push_back(p);
  return up;
}

std::vector<VarId> TreedepthDecomposition::roots() const {
  std::vector<VarId> rs;
  for (const auto& [v, par] : parent_)
    if (par == 0) rs.push_back(v);
  return rs;
}

std::vector<VarId> TreedepthDecomposition::leaves() const {
  std::set<VarId> inner;
  for (const auto& [v, par] : parent_)
    if (par != 0) inner.insert(par);
  std::vector<VarId> ls;
  for (const auto& [v, par] : parent_)
    if (!inner.count(v)) ls.push_back(v);
  return ls;
}

bool TreedepthDecomposition::is_leaf(VarId v) const {
  if (!contains(v)) return false;
  for (const auto& [child, par] : parent_)
    if (par == v) return false;
  return true;
}

TreedepthDecomposition TreedepthDecomposition::without_leaf(VarId v) const {
  if (!is_leaf(v))
    throw std::invalid_argument("vertex " + std::to_string(v) +
                                " is not a leaf of the forest");
  std::map<VarId, VarId> p = parent_;
  p.erase(v);
  return TreedepthDecomposition(std::move(p));
}

DecompositionCheck validate_decomposition(const ConstraintGraph& g,
                                          const TreedepthDecomposition& t) {
  std::vector<VarId> gv = g.vertices();
  if (static_cast<int>(gv.size()) != t.num_vertices())
    throw std::invalid_argument("decomposition vertex set differs from graph");
  for (VarId v : gv)
    if (!t.contains(v))
      throw std::invalid_argument("decomposition vertex set differs from graph");

  for (const auto& [u, v] : g.edges()) {
    if (!t.is_ancestor(u, v) && !t.is_ancestor(v, u))
      return {false, std::make_pair(u, v)};
  }
  return {true, std::nullopt};
}

TreedepthDecomposition dfs_decomposition(
    const ConstraintGraph& g, const std::vector<VarId>& preferred_roots) {
  std::map<VarId, VarId> parent;
  std::set<VarId> visited;

  auto dfs = [&](auto&& self, VarId v) -> void {
    for (VarId u : g.neighbors(v)) {
      if (visited.count(u)) continue;
      visited.insert(u);
      parent[u] = v;
      self(self, u);
    }
  };

  auto start = [&](VarId r) {
    if (!g.has_vertex(r) || visited.count(r)) return;
    visited.insert(r);
    parent[r] = 0;
    dfs(dfs, r);
  };

  for (VarId r : preferred_roots) start(r);
  for (VarId v : g.vertices()) start(v);
  return TreedepthDecomposition(std::move(parent));
}

namespace {

// Exact solver state: vertices mapped to bit positions, adjacency as masks.
struct ExactSolver {
  std::vector<VarId> ids;          // bit -> id, ascending
  std::vector<std::uint64_t> adj;  // bit -> neighbor mask
  std::unordered_map<std::uint64_t, int> height_memo;   // connected masks
  std::unordered_map<std::uint64_t, int> choice_memo;   // best root bit

  std::uint64_t component_of(std::uint64_t mask, int seed) const {
    std::uint64_t comp = 1ull << seed;
    std::uint64_t frontier = comp;
    while (frontier) {
      std::uint64_t next = 0;
      std::uint64_t f = frontier;
      while (f) {
        int b = std::countr_zero(f);
        f &= f - 1;
        next |= adj[static_cast<std::size_t>(b)] & mask & ~comp;
      }
      comp |= next;
      frontier = next;
    }
    return comp;
  }

  // height of the subgraph induced by mask (max over its components)
  int forest_height(std::uint64_t mask) {
    int h = 0;
    std::uint64_t rest = mask;
    while (rest) {
      std::uint64_t comp = component_of(mask, std::countr_zero(rest));
      h = std::max(h, connected_height(comp));
      rest &= ~comp;
    }
    return h;
  }

  int connected_height(std::uint64_t mask) {
    if (std::popcount(mask) == 1) return 0;
    auto it = height_memo.find(mask);
    if (it != height_memo.end()) return it->second;
    int best = INT32_MAX;
    int best_bit = -1;
    std::uint64_t m = mask;
    while (m) {
      int b = std::countr_zero(m);
      m &= m - 1;
      int h = 1 + forest_height(mask & ~(1ull << b));
      if (h < best) {
        best = h;
        best_bit = b;
      }
    }
    height_memo[mask] = best;
    choice_memo[mask] = best_bit;
    return best;
  }

  // builds the optimal forest for mask; roots get parent `above`
  void build(std::uint64_t mask, VarId above, std::map<VarId, VarId>& parent) {
    std::uint64_t rest = mask;
    while (rest) {
      std::uint64_t comp = component_of(mask, std::countr_zero(rest));
      rest &= ~comp;
      int root_bit;
      if (std::popcount(comp) == 1) {
        root_bit = std::countr_zero(comp);
      } else {
        connected_height(comp);
        root_bit = choice_memo.at(comp);
      }
      VarId root = ids[static_cast<std::size_t>(root_bit)];
      parent[root] = above;
      build(comp & ~(1ull << root_bit), root, parent);
    }
  }
};

}  // namespace

ExactTreedepth exact_treedepth(const ConstraintGraph& g, int max_vertices) {
  std::vector<VarId> ids = g.vertices();
  int n = static_cast<int>(ids.size());
  if (n > max_vertices || n > 63)
    throw std::invalid_argument("graph too large for exact treedepth (" +
                                std::to_string(n) + " vertices)");
  if (n == 0) return {0, TreedepthDecomposition()};

  ExactSolver s;
  s.ids = ids;
  s.adj.assign(static_cast<std::size_t>(n), 0);
  std::map<VarId, int> bit_of;
  for (int i = 0; i < n; ++i) bit_of[ids[static_cast<std::size_t>(i)]] = i;
  for (const auto& [u, v] : g.edges()) {
    s.adj[static_cast<std::size_t>(bit_of[u])] |= 1ull << bit_of[v];
    s.adj[static_cast<std::size_t>(bit_of[v])] |= 1ull << bit_of[u];
  }

  std::uint64_t all = n == 63 ? ~0ull >> 1 : (1ull << n) - 1;
  int h = s.forest_height(all);
  std::map<VarId, VarId> parent;
  s.build(all, 0, parent);
  TreedepthDecomposition t(std::move(parent));
  return {h, std::move(t)};
}

}  // namespace ascentlab
