#include "ascentlab/vcsp.hpp"

#include <algorithm>
#include <numeric>

namespace ascentlab {

ParseError::ParseError(int line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
      line(line_no) {}

Fitness checked_add(Fitness a, Fitness b) {
  Fitness r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("integer overflow in addition");
  return r;
}

Fitness checked_sub(Fitness a, Fitness b) {
  Fitness r;
  if (__builtin_sub_overflow(a, b, &r))
    throw OverflowError("integer overflow in subtraction");
  return r;
}

Fitness checked_mul(Fitness a, Fitness b) {
  Fitness r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("integer overflow in multiplication");
  return r;
}

Constraint Constraint::constant(Fitness value) {
  Constraint c;
  c.table.assign(1, value);
  return c;
}

Constraint Constraint::zeros(std::vector<VarId> scope,
                             std::vector<int> domains) {
  if (scope.size() != domains.size())
    throw std::invalid_argument("scope/domain size mismatch");
  if (!std::is_sorted(scope.begin(), scope.end()) ||
      std::adjacent_find(scope.begin(), scope.end()) != scope.end())
    throw std::invalid_argument("constraint scope must be sorted and distinct");
  std::size_t size = 1;
  for (int d : domains) {
    if (d < 1) throw std::invalid_argument("domain size must be >= 1");
    size = static_cast<std::size_t>(checked_mul(static_cast<Fitness>(size), d));
  }
  Constraint c;
  c.scope = std::move(scope);
  c.domains = std::move(domains);
  c.table.assign(size, 0);
  return c;
}

int Constraint::scope_position(VarId v) const {
  auto it = std::lower_bound(scope.begin(), scope.end(), v);
  if (it == scope.end() || *it != v) return -1;
  return static_cast<int>(it - scope.begin());
}

std::size_t Constraint::index_of(std::span<const int> tuple) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < scope.size(); ++i) {
    if (tuple[i] < 0 || tuple[i] >= domains[i])
      throw std::out_of_range("tuple value out of domain range");
    idx = idx * static_cast<std::size_t>(domains[i]) +
          static_cast<std::size_t>(tuple[i]);
  }
  return idx;
}

void Constraint::tuple_of(std::size_t index, std::span<int> out) const {
  for (std::size_t i = scope.size(); i-- > 0;) {
    out[i] = static_cast<int>(index % static_cast<std::size_t>(domains[i]));
    index /= static_cast<std::size_t>(domains[i]);
  }
}

Fitness Constraint::value_at(std::span<const int> tuple) const {
  return table[index_of(tuple)];
}

Fitness& Constraint::value_at(std::span<const int> tuple) {
  return table[index_of(tuple)];
}

Fitness Constraint::evaluate(const Assignment& x) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < scope.size(); ++i) {
    auto it = x.find(scope[i]);
    if (it == x.end())
      throw std::runtime_error("assignment does not define variable " +
                               std::to_string(scope[i]));
    if (it->second < 0 || it->second >= domains[i])
      throw std::runtime_error("assignment value out of range for variable " +
                               std::to_string(scope[i]));
    idx = idx * static_cast<std::size_t>(domains[i]) +
          static_cast<std::size_t>(it->second);
  }
  if (idx >= table.size())
    throw std::runtime_error("constraint table index out of range");
  return table[idx];
}

void Instance::add_variable(VarId id, int domain_size) {
  if (id <= 0) throw std::invalid_argument("variable ids must be positive");
  if (domain_size < 1) throw std::invalid_argument("domain size must be >= 1");
  if (domains_.count(id))
    throw std::invalid_argument("duplicate variable id " + std::to_string(id));
  domains_[id] = domain_size;
}

void Instance::add_constraint(Constraint c) {
  if (c.scope.size() != c.domains.size())
    throw std::invalid_argument("scope/domain size mismatch");
  if (!std::is_sorted(c.scope.begin(), c.scope.end()) ||
      std::adjacent_find(c.scope.begin(), c.scope.end()) != c.scope.end())
    throw std::invalid_argument("constraint scope must be sorted and distinct");
  std::size_t expected = 1;
  for (std::size_t i = 0; i < c.scope.size(); ++i) {
    auto it = domains_.find(c.scope[i]);
    if (it == domains_.end())
      throw std::invalid_argument("constraint scope references unknown variable " +
                                  std::to_string(c.scope[i]));
    if (it->second != c.domains[i])
      throw std::invalid_argument("constraint domain size disagrees with variable " +
                                  std::to_string(c.scope[i]));
    expected *= static_cast<std::size_t>(c.domains[i]);
  }
  if (c.table.size() != expected)
    throw std::invalid_argument("constraint table has wrong length");
  std::size_t pos = constraints_.size();
  for (VarId v : c.scope) by_var_[v].push_back(pos);
  constraints_.push_back(std::move(c));
}

bool Instance::is_active(VarId id) const { return domains_.count(id) != 0; }

int Instance::domain_size(VarId id) const {
  auto it = domains_.find(id);
  if (it == domains_.end())
    throw std::invalid_argument("unknown variable " + std::to_string(id));
  return it->second;
}

int Instance::max_domain_size() const {
  int v = 0;
  for (const auto& [id, d] : domains_) v = std::max(v, d);
  return v;
}

const std::vector<std::size_t>& Instance::constraints_on(VarId id) const {
  static const std::vector<std::size_t> kEmpty;
  auto it = by_var_.find(id);
  return it == by_var_.end() ? kEmpty : it->second;
}

Fitness fitness(const Instance& inst, const Assignment& x) {
  Fitness total = 0;
  for (const Constraint& c : inst.constraints())
    total = checked_add(total, c.evaluate(x));
  return total;
}

Fitness delta_fitness(const Instance& inst, const Assignment& x, VarId var,
                      int new_value) {
  if (!inst.is_active(var))
    throw std::invalid_argument("unknown variable " + std::to_string(var));
  if (new_value < 0 || new_value >= inst.domain_size(var))
    throw std::invalid_argument("value out of range for variable " +
                                std::to_string(var));
  auto cur = x.find(var);
  if (cur == x.end())
    throw std::runtime_error("assignment does not define variable " +
                             std::to_string(var));
  if (cur->second == new_value) return 0;

  Fitness d = 0;
  std::vector<int> tuple;
  for (std::size_t ci : inst.constraints_on(var)) {
    const Constraint& c = inst.constraints()[ci];
    tuple.resize(c.arity());
    for (std::size_t i = 0; i < c.scope.size(); ++i) {
      auto it = x.find(c.scope[i]);
      if (it == x.end())
        throw std::runtime_error("assignment does not define variable " +
                                 std::to_string(c.scope[i]));
      tuple[i] = it->second;
    }
    Fitness before = c.value_at(tuple);
    tuple[static_cast<std::size_t>(c.scope_position(var))] = new_value;
    Fitness after = c.value_at(tuple);
    d = checked_add(d, checked_sub(after, before));
  }
  return d;
}

std::vector<Move> improving_moves(const Instance& inst, const Assignment& x) {
  std::vector<Move> moves;
  for (const auto& [id, dom] : inst.variables()) {
    int cur = x.at(id);
    for (int v = 0; v < dom; ++v) {
      if (v == cur) continue;
      Fitness d = delta_fitness(inst, x, id, v);
      if (d > 0) moves.push_back({id, v, d});
    }
  }
  return moves;
}

bool is_local_solution(const Instance& inst, const Assignment& x) {
  for (const auto& [id, dom] : inst.variables()) {
    int cur = x.at(id);
    for (int v = 0; v < dom; ++v)
      if (v != cur && delta_fitness(inst, x, id, v) > 0) return false;
  }
  return true;
}

Assignment all_zeros(const Instance& inst) {
  Assignment x;
  for (const auto& [id, dom] : inst.variables()) x[id] = 0;
  return x;
}

void validate_assignment(const Instance& inst, const Assignment& x) {
  if (static_cast<int>(x.size()) != inst.num_variables())
    throw std::invalid_argument("assignment size disagrees with instance");
  for (const auto& [id, value] : x) {
    if (!inst.is_active(id))
      throw std::invalid_argument("assignment defines inactive variable " +
                                  std::to_string(id));
    if (value < 0 || value >= inst.domain_size(id))
      throw std::invalid_argument("assignment value out of range for variable " +
                                  std::to_string(id));
  }
}

bool instances_equal_up_to_constraint_order(const Instance& a,
                                            const Instance& b) {
  if (a.variables() != b.variables()) return false;
  auto key = [](const Constraint& c) { return std::tie(c.scope, c.table); };
  std::vector<Constraint> ca = a.constraints();
  std::vector<Constraint> cb = b.constraints();
  auto less = [&](const Constraint& l, const Constraint& r) {
    return key(l) < key(r);
  };
  std::sort(ca.begin(), ca.end(), less);
  std::sort(cb.begin(), cb.end(), less);
  return ca == cb;
}

}  // namespace ascentlab
