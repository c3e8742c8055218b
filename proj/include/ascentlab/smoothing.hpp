#pragma once

#include <optional>
#include <set>
#include <string>

#include "ascentlab/search.hpp"
#include "ascentlab/treedepth.hpp"
#include "ascentlab/vcsp.hpp"

namespace ascentlab {

/// NS(k): the union of all constraint scopes containing k, including k
/// itself (also when k has no constraints).
std::set<VarId> scope_neighborhood(const Instance& inst, VarId k);

struct SmoothingRecord {
  VarId removed_var = 0;
  std::vector<VarId> neighborhood;  // NS(k) \ {k}, sorted
  Constraint new_constraint;
  std::vector<Constraint> removed_constraints;
  std::string to_text() const;
};

/// The smoothing operator: removes k and every constraint containing it,
/// and adds one constraint over NS(k) \ {k} whose table holds, for each
/// neighborhood assignment y, the maximum over a in D_k of the sum of the
/// removed constraints at (a, y). Satisfies, for every assignment y of the
/// result, fitness(result, y) = max over a of fitness(inst, y + {k=a}).
std::pair<Instance, SmoothingRecord> smooth(const Instance& inst, VarId k);

/// The projected step-sequence: start and steps restricted to ids other
/// than k, steps with step-index k removed. Fitness values are recomputed
/// against the smoothed instance. |projection| = |trace| - flips of k.
Trace project_sequence(const Trace& trace, VarId k, const Instance& smoothed);

struct SmoothingVerdicts {
  bool lemma1 = false;              // T - {k} valid for the smoothed graph
  bool projected_ordered = false;   // projection is an ordered ascent
  bool projection_length = false;   // |p - k| == |p| - |p|_k
  bool flip_bound = false;          // |p|_k <= (|D_k|-1)(1 + ancestor flips)
  std::optional<bool> projected_step_steepest;  // set iff trace step-steepest
  std::optional<bool> steepest_flip_bound;      // |p|_k <= 1 + ancestor flips
  int flips_of_k = 0;
  long long ancestor_flip_sum = 0;
  long long ns_flip_sum = 0;  // same sum restricted to NS(k) \ {k}
  bool all_pass() const;
  std::string to_text() const;
};

/// Checks the leaf-smoothing claims on concrete data: k must be a leaf of t
/// and trace must verify as a t-ordered ascent of inst (throws otherwise).
SmoothingVerdicts verify_smoothing(const Instance& inst,
                                   const TreedepthDecomposition& t, VarId k,
                                   const Trace& trace);

}  // namespace ascentlab
