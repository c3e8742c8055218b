#include "ascentlab/smoothing.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ascentlab {

std::set<VarId> scope_neighborhood(const Instance& inst, VarId k) {
  if (!inst.is_active(k))
    throw std::invalid_argument("unknown variable " + std::to_string(k));
  std::set<VarId> ns{k};
  for (std::size_t ci : inst.constraints_on(k)) {
    const Constraint& c = inst.constraints()[ci];
    ns.insert(c.scope.begin(), c.scope.end());
  }
  return ns;
}

std::string SmoothingRecord::to_text() const {
  std::ostringstream out;
  out << "SMOOTH var=" << removed_var << " neighborhood=";
  if (neighborhood.empty()) out << '-';
  for (std::size_t i = 0; i < neighborhood.size(); ++i)
    out << (i ? "," : "") << neighborhood[i];
  out << " removed_constraints=" << removed_constraints.size()
      << " new_arity=" << new_constraint.arity() << '\n';
  std::vector<int> tuple(new_constraint.arity());
  for (std::size_t idx = 0; idx < new_constraint.table_size(); ++idx) {
    if (new_constraint.table[idx] == 0) continue;
    new_constraint.tuple_of(idx, tuple);
    out << "ENTRY";
    for (int v : tuple) out << ' ' << v;
    out << ' ' << new_constraint.table[idx] << '\n';
  }
  return out.str();
}

std::pair<Instance, SmoothingRecord> smooth(const Instance& inst, VarId k) {
  if (!inst.is_active(k))
    throw std::invalid_argument("unknown variable " + std::to_string(k));

  std::set<VarId> ns = scope_neighborhood(inst, k);
  SmoothingRecord record;
  record.removed_var = k;
  for (VarId v : ns)
    if (v != k) record.neighborhood.push_back(v);

  std::vector<int> nbr_domains;
  for (VarId v : record.neighborhood) nbr_domains.push_back(inst.domain_size(v));

  Constraint merged = Constraint::zeros(record.neighborhood, nbr_domains);
  if (merged.table_size() > (1u << 24))
    throw OverflowError("smoothed constraint table is too large");

  for (std::size_t ci : inst.constraints_on(k))
    record.removed_constraints.push_back(inst.constraints()[ci]);

  // For each neighborhood tuple, maximize the removed constraints over D_k.
  Assignment probe;
  std::vector<int> tuple(record.neighborhood.size());
  for (std::size_t idx = 0; idx < merged.table_size(); ++idx) {
    merged.tuple_of(idx, tuple);
    probe.clear();
    for (std::size_t i = 0; i < record.neighborhood.size(); ++i)
      probe[record.neighborhood[i]] = tuple[i];
    Fitness best = std::numeric_limits<Fitness>::min();
    for (int a = 0; a < inst.domain_size(k); ++a) {
      probe[k] = a;
      Fitness sum = 0;
      for (const Constraint& c : record.removed_constraints)
        sum = checked_add(sum, c.evaluate(probe));
      best = std::max(best, sum);
    }
    merged.table[idx] = best;
  }
  record.new_constraint = merged;

  Instance out;
  for (const auto& [id, dom] : inst.variables())
    if (id != k) out.add_variable(id, dom);
  for (const Constraint& c : inst.constraints())
    if (c.scope_position(k) < 0) out.add_constraint(c);
  out.add_constraint(std::move(merged));
  return {std::move(out), std::move(record)};
}

Trace project_sequence(const Trace& trace, VarId k, const Instance& smoothed) {
  Trace out;
  out.start = trace.start;
  out.start.erase(k);
  out.start_fitness = fitness(smoothed, out.start);
  out.complete = trace.complete;

  Assignment x = out.start;
  Fitness f = out.start_fitness;
  for (const TraceStep& s : trace.steps) {
    if (s.var == k) continue;
    f = checked_add(f, delta_fitness(smoothed, x, s.var, s.new_value));
    out.steps.push_back({s.var, s.old_value, s.new_value, f});
    x[s.var] = s.new_value;
  }
  return out;
}

bool SmoothingVerdicts::all_pass() const {
  if (!lemma1 || !projected_ordered || !projection_length || !flip_bound)
    return false;
  if (projected_step_steepest && !*projected_step_steepest) return false;
  if (steepest_flip_bound && !*steepest_flip_bound) return false;
  return true;
}

std::string SmoothingVerdicts::to_text() const {
  auto word = [](bool b) { return b ? "pass" : "FAIL"; };
  std::ostringstream out;
  out << "VERDICT lemma1 " << word(lemma1) << '\n';
  out << "VERDICT projected-ordered-ascent " << word(projected_ordered) << '\n';
  out << "VERDICT projection-length " << word(projection_length) << '\n';
  out << "VERDICT flip-bound " << word(flip_bound) << " flips=" << flips_of_k
      << " ancestor_sum=" << ancestor_flip_sum << " ns_sum=" << ns_flip_sum
      << '\n';
  if (projected_step_steepest)
    out << "VERDICT projected-step-steepest " << word(*projected_step_steepest)
        << '\n';
  if (steepest_flip_bound)
    out << "VERDICT steepest-flip-bound " << word(*steepest_flip_bound) << '\n';
  return out.str();
}

SmoothingVerdicts verify_smoothing(const Instance& inst,
                                   const TreedepthDecomposition& t, VarId k,
                                   const Trace& trace) {
  if (!t.is_leaf(k))
    throw std::invalid_argument("variable " + std::to_string(k) +
                                " is not a leaf of the decomposition");
  VerifyChecks ordered_checks;
  ordered_checks.ordered = OrderSpec::descendants(t);
  if (!verify_trace(inst, trace, ordered_checks).all_pass())
    throw std::invalid_argument("trace is not an ordered ascent for the "
                                "given decomposition");

  SmoothingVerdicts v;
  auto [smoothed, record] = smooth(inst, k);

  TreedepthDecomposition reduced = t.without_leaf(k);
  v.lemma1 = validate_decomposition(constraint_graph(smoothed), reduced).valid;

  Trace projected = project_sequence(trace, k, smoothed);
  std::map<VarId, int> flips = trace.flip_counts();
  v.flips_of_k = flips.at(k);
  v.projection_length =
      projected.length() == trace.length() - static_cast<std::size_t>(v.flips_of_k);

  VerifyChecks projected_checks;
  projected_checks.ordered = OrderSpec::descendants(reduced);
  v.projected_ordered =
      verify_trace(smoothed, projected, projected_checks).all_pass();

  for (VarId j : t.ancestors(k)) v.ancestor_flip_sum += flips.at(j);
  for (VarId j : record.neighborhood) v.ns_flip_sum += flips.at(j);

  long long dk = inst.domain_size(k) - 1;
  v.flip_bound = v.flips_of_k <= dk * (1 + v.ancestor_flip_sum);

  VerifyChecks steepest_check;
  steepest_check.ascent = false;
  steepest_check.step_steepest = true;
  if (verify_trace(inst, trace, steepest_check).all_pass()) {
    v.projected_step_steepest =
        verify_trace(smoothed, projected, steepest_check).all_pass();
    v.steepest_flip_bound = v.flips_of_k <= 1 + v.ancestor_flip_sum;
  }
  return v;
}

}  // namespace ascentlab
