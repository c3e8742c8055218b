#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ascentlab/vcsp.hpp"

namespace ascentlab {

/// Undirected constraint graph: vertices are variable ids, an edge joins two
/// ids whenever some constraint scope contains both.
class ConstraintGraph {
 public:
  void add_vertex(VarId v);
  void add_edge(VarId u, VarId v);  // adds missing endpoints; no self-loops

  bool has_vertex(VarId v) const { return adj_.count(v) != 0; }
  bool has_edge(VarId u, VarId v) const;
  const std::set<VarId>& neighbors(VarId v) const;
  std::vector<VarId> vertices() const;
  /// Normalized (u < v) edge list, sorted.
  std::vector<std::pair<VarId, VarId>> edges() const;
  int num_vertices() const { return static_cast<int>(adj_.size()); }
  std::size_t num_edges() const;

  bool operator==(const ConstraintGraph&) const = default;

 private:
  std::map<VarId, std::set<VarId>> adj_;
};

ConstraintGraph constraint_graph(const Instance& inst);

/// Rooted forest over variable ids. parent maps every vertex to its parent,
/// or to 0 for roots. Height counts edges: a forest of isolated roots has
/// height 0, so an edgeless graph has treedepth 0.
class TreedepthDecomposition {
 public:
  TreedepthDecomposition() = default;
  explicit TreedepthDecomposition(std::map<VarId, VarId> parent);

  const std::map<VarId, VarId>& parent_map() const { return parent_; }
  VarId parent(VarId v) const;  // 0 for roots
  bool contains(VarId v) const { return parent_.count(v) != 0; }
  int num_vertices() const { return static_cast<int>(parent_.size()); }

  int height() const;
  int depth(VarId v) const;  // edge count from the root, 0 for roots
  /// True iff a is a strict ancestor of b.
  bool is_ancestor(VarId a, VarId b) const;
  std::vector<VarId> ancestors(VarId v) const;  // strict, bottom-up
  std::vector<VarId> roots() const;
  std::vector<VarId> leaves() const;
  bool is_leaf(VarId v) const;

  /// Forest with leaf v removed. Throws if v is not a leaf.
  TreedepthDecomposition without_leaf(VarId v) const;

  bool operator==(const TreedepthDecomposition&) const = default;

 private:
  std::map<VarId, VarId> parent_;
};

struct DecompositionCheck {
  bool valid = false;
  /// First violating edge when invalid for a vertex-complete forest.
  std::optional<std::pair<VarId, VarId>> violating_edge;
};

/// True iff every graph edge joins an ancestor-descendant pair in t.
/// Throws if t's vertex set differs from g's.
DecompositionCheck validate_decomposition(const ConstraintGraph& g,
                                          const TreedepthDecomposition& t);

/// Depth-first spanning forest; always valid because DFS on an undirected
/// graph leaves only back edges. Deterministic: preferred roots first, then
/// ascending ids; neighbors visited in ascending order.
TreedepthDecomposition dfs_decomposition(
    const ConstraintGraph& g, const std::vector<VarId>& preferred_roots = {});

struct ExactTreedepth {
  int height = 0;
  TreedepthDecomposition decomposition;
};

/// Minimal-height decomposition by memoized recursion over vertex bitmasks:
/// take the max over components; for a connected graph, 1 + min over v of
/// the height of G - v. Ties broken by smallest vertex id.
/// Throws if the graph has more than max_vertices vertices.
ExactTreedepth exact_treedepth(const ConstraintGraph& g, int max_vertices = 20);

}  // namespace ascentlab
