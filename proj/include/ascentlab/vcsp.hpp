#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ascentlab {

/// Variable identifier. Positive, unique within an instance, and stable:
/// smoothing removes ids from the active set but never renumbers survivors.
using VarId = int;

/// Fitness values and constraint table entries. All arithmetic on these is
/// overflow-checked and overflow is a hard error, never wraparound.
using Fitness = std::int64_t;

struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what);
  int line;
};

Fitness checked_add(Fitness a, Fitness b);
Fitness checked_sub(Fitness a, Fitness b);
Fitness checked_mul(Fitness a, Fitness b);

/// Maps each active variable to a domain value in 0..domain_size-1.
using Assignment = std::map<VarId, int>;

/// A valued constraint: sorted scope plus a dense integer table indexed
/// lexicographically, first scope variable most significant. Arity 0 is
/// allowed; its table is a single additive constant.
struct Constraint {
  std::vector<VarId> scope;
  std::vector<int> domains;    // domain size per scope position
  std::vector<Fitness> table;  // dense, size = product of domains

  static Constraint constant(Fitness value);
  /// All-zero table over the given scope.
  static Constraint zeros(std::vector<VarId> scope, std::vector<int> domains);

  std::size_t arity() const { return scope.size(); }
  std::size_t table_size() const { return table.size(); }
  int scope_position(VarId v) const;  // -1 if v not in scope

  std::size_t index_of(std::span<const int> tuple) const;
  void tuple_of(std::size_t index, std::span<int> out) const;
  Fitness value_at(std::span<const int> tuple) const;
  Fitness& value_at(std::span<const int> tuple);

  /// Table value at x restricted to the scope.
  Fitness evaluate(const Assignment& x) const;

  bool operator==(const Constraint&) const = default;
};

/// A VCSP instance: active variables with finite domains plus a list of
/// integer-valued constraints. Treated as an immutable value once built;
/// all operations on instances are pure functions.
class Instance {
 public:
  Instance() = default;

  void add_variable(VarId id, int domain_size);
  void add_constraint(Constraint c);

  bool is_active(VarId id) const;
  int domain_size(VarId id) const;
  const std::map<VarId, int>& variables() const { return domains_; }
  int num_variables() const { return static_cast<int>(domains_.size()); }
  int max_domain_size() const;

  const std::vector<Constraint>& constraints() const { return constraints_; }
  /// Indices into constraints() of every constraint whose scope contains id.
  const std::vector<std::size_t>& constraints_on(VarId id) const;

 private:
  std::map<VarId, int> domains_;
  std::vector<Constraint> constraints_;
  std::map<VarId, std::vector<std::size_t>> by_var_;
};

/// f(x) = sum of all constraint tables evaluated at x. Exact 64-bit checked.
Fitness fitness(const Instance& inst, const Assignment& x);

/// fitness(x with var=new_value) - fitness(x), touching only the constraints
/// whose scope contains var.
Fitness delta_fitness(const Instance& inst, const Assignment& x, VarId var,
                      int new_value);

struct Move {
  VarId var;
  int new_value;
  Fitness delta;
  bool operator==(const Move&) const = default;
};

/// Every strictly improving single-variable change, ordered by ascending
/// variable id then ascending value. Empty iff x is a local solution.
std::vector<Move> improving_moves(const Instance& inst, const Assignment& x);

bool is_local_solution(const Instance& inst, const Assignment& x);

Assignment all_zeros(const Instance& inst);

/// Throws if x is not defined on exactly the active ids with in-range values.
void validate_assignment(const Instance& inst, const Assignment& x);

/// Equality of variables and of the constraint multiset, ignoring order.
bool instances_equal_up_to_constraint_order(const Instance& a,
                                            const Instance& b);

}  // namespace ascentlab
