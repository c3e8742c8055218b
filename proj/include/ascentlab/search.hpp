#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ascentlab/treedepth.hpp"
#include "ascentlab/vcsp.hpp"

namespace ascentlab {

/// Partial or total order over variable ids used by ordered ascents.
/// precedes(a, b) means a comes strictly before b (a is "smaller").
class OrderSpec {
 public:
  enum class Kind {
    DescendingIndex,  // ">": higher ids are smaller in the order
    Explicit,         // total order given as a permutation, minimal first
    Decomposition,    // a precedes b iff a is a strict descendant of b
  };

  static OrderSpec descending_index();
  static OrderSpec explicit_order(std::vector<VarId> minimal_first);
  static OrderSpec descendants(TreedepthDecomposition t);

  Kind kind() const { return kind_; }
  const TreedepthDecomposition& decomposition() const;
  bool precedes(VarId a, VarId b) const;

  /// The order-minimal elements of the given candidate set.
  std::vector<VarId> minimal(const std::vector<VarId>& candidates) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::DescendingIndex;
  std::vector<VarId> sequence_;
  std::map<VarId, int> position_;
  TreedepthDecomposition tdd_;
};

struct Policy {
  enum class MoveRule { Ordered, SteepestNeighbor, FirstImprovement, RandomImprovement };
  enum class ValueRule { FirstImproving, BestValue };

  MoveRule move_rule = MoveRule::Ordered;
  ValueRule value_rule = ValueRule::FirstImproving;
  std::optional<OrderSpec> order;  // required iff move_rule == Ordered
  std::uint64_t seed = 0;          // used by RandomImprovement

  static Policy ordered(OrderSpec o,
                        ValueRule value = ValueRule::FirstImproving);
  static Policy steepest_neighbor();
  static Policy first_improvement(ValueRule value = ValueRule::FirstImproving);
  static Policy random_improvement(std::uint64_t seed,
                                   ValueRule value = ValueRule::FirstImproving);

  std::string describe() const;
};

struct TraceStep {
  VarId var;
  int old_value;
  int new_value;
  Fitness fitness_after;
  bool operator==(const TraceStep&) const = default;
};

/// Record of an ascent run: start assignment plus one entry per step.
/// complete is true when the run ended at a local solution; a trace cut off
/// by the step budget is an ascent prefix, not an ascent.
struct Trace {
  Assignment start;
  Fitness start_fitness = 0;
  std::vector<TraceStep> steps;
  bool complete = false;

  std::size_t length() const { return steps.size(); }
  Fitness final_fitness() const;
  Assignment final_assignment() const;
  std::map<VarId, int> flip_counts() const;
};

/// Step budget heuristic: 4 * v^(h+1) * n with a decomposition, else
/// 2 * v^n, both capped. Overruns of the former falsify the length bound.
std::size_t default_max_steps(const Instance& inst,
                              const TreedepthDecomposition* tdd = nullptr);

/// Runs a strict ascent from start under the policy. Deterministic given
/// (instance, start, policy); ties broken by smallest variable id, then
/// smallest value.
Trace ascend(const Instance& inst, const Assignment& start,
             const Policy& policy,
             std::optional<std::size_t> max_steps = std::nullopt);

struct CheckEntry {
  std::string name;
  bool pass = false;
  std::optional<std::size_t> violation_step;  // 1-based step number
  std::string detail;
};

struct CheckReport {
  std::vector<CheckEntry> entries;
  bool all_pass() const;
  const CheckEntry* find(const std::string& name) const;
  std::string to_text() const;
};

struct VerifyChecks {
  bool ascent = true;
  std::optional<OrderSpec> ordered;
  bool step_steepest = false;
};

/// Replays the trace against the instance. Always validates structure and
/// recorded fitness values; then checks, as requested: strictly increasing
/// fitness ending at a local solution; order-minimality of every flipped
/// index; and step-steepest value choice. Failures are report entries.
CheckReport verify_trace(const Instance& inst, const Trace& trace,
                         const VerifyChecks& checks);

struct VariableBound {
  VarId var;
  int depth;
  int flips;
  Fitness bound;
  bool ok;
};

struct BoundsReport {
  bool decomposition_valid = false;
  int height = 0;
  int max_domain = 0;
  bool step_steepest = false;
  std::size_t length = 0;
  Fitness length_bound = 0;
  bool length_ok = false;
  std::vector<VariableBound> per_variable;
  bool all_ok() const;
  std::string to_text() const;
};

/// Checks the trace against the ordered-ascent bounds: total length at most
/// v^(height+1) * n and per-variable flips at most v^(depth+1), with base 2
/// instead of v when step_steepest is set. The caller is responsible for
/// having verified the trace as an ordered ascent for t first.
BoundsReport check_bounds(const Instance& inst, const Trace& trace,
                          const TreedepthDecomposition& t, bool step_steepest);

}  // namespace ascentlab
