#include "ascentlab/search.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ascentlab {

OrderSpec OrderSpec::descending_index() {
  OrderSpec o;
  o.kind_ = Kind::DescendingIndex;
  return o;
}

OrderSpec OrderSpec::explicit_order(std::vector<VarId> minimal_first) {
  OrderSpec o;
  o.kind_ = Kind::Explicit;
  o.sequence_ = std::move(minimal_first);
  for (std::size_t i = 0; i < o.sequence_.size(); ++i) {
    if (!o.position_.emplace(o.sequence_[i], static_cast<int>(i)).second)
      throw std::invalid_argument("explicit order repeats a variable");
  }
  return o;
}

OrderSpec OrderSpec::descendants(TreedepthDecomposition t) {
  OrderSpec o;
  o.kind_ = Kind::Decomposition;
  o.tdd_ = std::move(t);
  return o;
}

const TreedepthDecomposition& OrderSpec::decomposition() const {
  if (kind_ != Kind::Decomposition)
    throw std::logic_error("order has no decomposition");
  return tdd_;
}

bool OrderSpec::precedes(VarId a, VarId b) const {
  switch (kind_) {
    case Kind::DescendingIndex:
      return a > b;
    case Kind::Explicit: {
      auto ia = position_.find(a);
      auto ib = position_.find(b);
      if (ia == position_.end() || ib == position_.end())
        throw std::invalid_argument("variable missing from explicit order");
      return ia->second < ib->second;
    }
    case Kind::Decomposition:
      return tdd_.is_ancestor(b, a);  // a strict descendant of b
  }
  return false;
}

std::vector<VarId> OrderSpec::minimal(const std::vector<VarId>& candidates) const {
  std::vector<VarId> out;
  for (VarId v : candidates) {
    bool dominated = false;
    for (VarId u : candidates) {
      if (u != v && precedes(u, v)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(v);
  }
  return out;
}

std::string OrderSpec::describe() const {
  switch (kind_) {
    case Kind::DescendingIndex:
      return "desc-index";
    case Kind::Explicit:
      return "explicit";
    case Kind::Decomposition:
      return "tdd";
  }
  return "?";
}

Policy Policy::ordered(OrderSpec o, ValueRule value) {
  Policy p;
  p.move_rule = MoveRule::Ordered;
  p.value_rule = value;
  p.order = std::move(o);
  return p;
}

Policy Policy::steepest_neighbor() {
  Policy p;
  p.move_rule = MoveRule::SteepestNeighbor;
  p.value_rule = ValueRule::BestValue;
  return p;
}

Policy Policy::first_improvement(ValueRule value) {
  Policy p;
  p.move_rule = MoveRule::FirstImprovement;
  p.value_rule = value;
  return p;
}

Policy Policy::random_improvement(std::uint64_t seed, ValueRule value) {
  Policy p;
  p.move_rule = MoveRule::RandomImprovement;
  p.value_rule = value;
  p.seed = seed;
  return p;
}

std::string Policy::describe() const {
  std::string s;
  switch (move_rule) {
    case MoveRule::Ordered:
      s = value_rule == ValueRule::BestValue ? "step-steepest-ordered" : "ordered";
      s += "(" + order->describe() + ")";
      return s;
    case MoveRule::SteepestNeighbor:
      return "steepest";
    case MoveRule::FirstImprovement:
      return "first";
    case MoveRule::RandomImprovement:
      return "random(seed=" + std::to_string(seed) + ")";
  }
  return "?";
}

Fitness Trace::final_fitness() const {
  return steps.empty() ? start_fitness : steps.back().fitness_after;
}

Assignment Trace::final_assignment() const {
  Assignment x = start;
  for (const TraceStep& s : steps) x[s.var] = s.new_value;
  return x;
}

std::map<VarId, int> Trace::flip_counts() const {
  std::map<VarId, int> counts;
  for (const auto& [v, d] : start) counts[v] = 0;
  for (const TraceStep& s : steps) ++counts[s.var];
  return counts;
}

namespace {

constexpr std::size_t kStepCap = 1u << 24;

// Smallest improving value, or the overall best value, for one variable.
// Returns the chosen (value, delta); delta <= 0 means no improving value.
std::pair<int, Fitness> choose_value(const Instance& inst, const Assignment& x,
                                     VarId var, Policy::ValueRule rule) {
  int cur = x.at(var);
  int dom = inst.domain_size(var);
  if (rule == Policy::ValueRule::FirstImproving) {
    for (int v = 0; v < dom; ++v) {
      if (v == cur) continue;
      Fitness d = delta_fitness(inst, x, var, v);
      if (d > 0) return {v, d};
    }
    return {cur, 0};
  }
  int best = cur;
  Fitness best_delta = 0;
  for (int v = 0; v < dom; ++v) {
    if (v == cur) continue;
    Fitness d = delta_fitness(inst, x, var, v);
    if (d > best_delta) {
      best = v;
      best_delta = d;
    }
  }
  return {best, best_delta};
}

std::vector<VarId> improvable_vars(const Instance& inst, const Assignment& x) {
  std::vector<VarId> vars;
  for (const auto& [id, dom] : inst.variables()) {
    int cur = x.at(id);
    for (int v = 0; v < dom; ++v) {
      if (v != cur && delta_fitness(inst, x, id, v) > 0) {
        vars.push_back(id);
        break;
      }
    }
  }
  return vars;
}

struct Chosen {
  VarId var;
  int value;
  Fitness delta;
};

std::optional<Chosen> pick_move(const Instance& inst, const Assignment& x,
                                const Policy& policy, std::mt19937_64& rng) {
  switch (policy.move_rule) {
    case Policy::MoveRule::Ordered: {
      std::vector<VarId> can = improvable_vars(inst, x);
      if (can.empty()) return std::nullopt;
      std::vector<VarId> min = policy.order->minimal(can);
      VarId var = *std::min_element(min.begin(), min.end());
      auto [value, delta] = choose_value(inst, x, var, policy.value_rule);
      return Chosen{var, value, delta};
    }
    case Policy::MoveRule::SteepestNeighbor: {
      std::optional<Chosen> best;
      for (const Move& m : improving_moves(inst, x))
        if (!best || m.delta > best->delta) best = Chosen{m.var, m.new_value, m.delta};
      return best;
    }
    case Policy::MoveRule::FirstImprovement: {
      for (const auto& [id, dom] : inst.variables()) {
        auto [value, delta] = choose_value(inst, x, id, policy.value_rule);
        if (delta > 0) return Chosen{id, value, delta};
      }
      return std::nullopt;
    }
    case Policy::MoveRule::RandomImprovement: {
      std::vector<VarId> can = improvable_vars(inst, x);
      if (can.empty()) return std::nullopt;
      VarId var = can[rng() % can.size()];
      if (policy.value_rule == Policy::ValueRule::BestValue) {
        auto [value, delta] = choose_value(inst, x, var, policy.value_rule);
        return Chosen{var, value, delta};
      }
      std::vector<std::pair<int, Fitness>> values;
      int cur = x.at(var);
      for (int v = 0; v < inst.domain_size(var); ++v) {
        if (v == cur) continue;
        Fitness d = delta_fitness(inst, x, var, v);
        if (d > 0) values.emplace_back(v, d);
      }
      auto [value, delta] = values[rng() % values.size()];
      return Chosen{var, value, delta};
    }
  }
  return std::nullopt;
}

}  // namespace

std::size_t default_max_steps(const Instance& inst,
                              const TreedepthDecomposition* tdd) {
  Fitness v = std::max(2, inst.max_domain_size());
  Fitness n = inst.num_variables();
  Fitness budget = 0;
  try {
    if (tdd) {
      Fitness b = 1;
      for (int i = 0; i <= tdd->height(); ++i) b = checked_mul(b, v);
      budget = checked_mul(checked_mul(b, n), 4);
    } else {
      Fitness b = 2;
      for (Fitness i = 0; i < n; ++i) b = checked_mul(b, v);
      budget = b;
    }
  } catch (const OverflowError&) {
    return kStepCap;
  }
  return static_cast<std::size_t>(
      std::min<Fitness>(budget, static_cast<Fitness>(kStepCap)));
}

Trace ascend(const Instance& inst, const Assignment& start,
             const Policy& policy, std::optional<std::size_t> max_steps) {
  validate_assignment(inst, start);
  if (policy.move_rule == Policy::MoveRule::Ordered && !policy.order)
    throw std::invalid_argument("ordered policy requires an order");

  std::size_t cap;
  if (max_steps) {
    cap = *max_steps;
  } else if (policy.move_rule == Policy::MoveRule::Ordered &&
             policy.order->kind() == OrderSpec::Kind::Decomposition) {
    cap = default_max_steps(inst, &policy.order->decomposition());
  } else {
    cap = default_max_steps(inst, nullptr);
  }

  Trace trace;
  trace.start = start;
  trace.start_fitness = fitness(inst, start);

  Assignment x = start;
  Fitness f = trace.start_fitness;
  std::mt19937_64 rng(policy.seed);

  while (true) {
    std::optional<Chosen> mv = pick_move(inst, x, policy, rng);
    if (!mv) {
      trace.complete = true;
      break;
    }
    if (trace.steps.size() >= cap) {
      trace.complete = false;  // budget exhausted: prefix, not an ascent
      break;
    }
    f = checked_add(f, mv->delta);
    trace.steps.push_back({mv->var, x.at(mv->var), mv->value, f});
    x[mv->var] = mv->value;
  }
  return trace;
}

bool CheckReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const CheckEntry& e) { return e.pass; });
}

const CheckEntry* CheckReport::find(const std::string& name) const {
  for (const CheckEntry& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::string CheckReport::to_text() const {
  std::ostringstream out;
  for (const CheckEntry& e : entries) {
    out << "CHECK " << e.name << ' ' << (e.pass ? "pass" : "FAIL");
    if (e.violation_step) out << " step=" << *e.violation_step;
    if (!e.detail.empty()) out << " (" << e.detail << ')';
    out << '\n';
  }
  return out.str();
}

CheckReport verify_trace(const Instance& inst, const Trace& trace,
                         const VerifyChecks& checks) {
  CheckReport report;

  CheckEntry structure{"structure", true, std::nullopt, ""};
  CheckEntry ascent{"ascent", true, std::nullopt, ""};
  CheckEntry ordered{"ordered", true, std::nullopt, ""};
  CheckEntry steepest{"step-steepest", true, std::nullopt, ""};

  try {
    validate_assignment(inst, trace.start);
  } catch (const std::exception& e) {
    structure = {"structure", false, std::nullopt, e.what()};
  }

  if (structure.pass && fitness(inst, trace.start) != trace.start_fitness)
    structure = {"structure", false, std::nullopt, "recorded start fitness is wrong"};

  Assignment x = trace.start;
  if (structure.pass) {
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      const TraceStep& s = trace.steps[i];
      std::size_t step_no = i + 1;
      if (!inst.is_active(s.var) || x.at(s.var) != s.old_value ||
          s.new_value == s.old_value || s.new_value < 0 ||
          s.new_value >= inst.domain_size(s.var)) {
        structure = {"structure", false, step_no, "step is not a valid move"};
        break;
      }
      Assignment y = x;
      y[s.var] = s.new_value;
      Fitness fy = fitness(inst, y);
      if (fy != s.fitness_after) {
        structure = {"structure", false, step_no, "recorded fitness is wrong"};
        break;
      }

      Fitness fx = fitness(inst, x);
      if (ascent.pass && fy <= fx)
        ascent = {"ascent", false, step_no, "step does not increase fitness"};

      if (checks.ordered && ordered.pass) {
        std::vector<VarId> can = improvable_vars(inst, x);
        bool improvable =
            std::find(can.begin(), can.end(), s.var) != can.end();
        bool minimal = improvable;
        if (improvable) {
          for (VarId u : can) {
            if (u != s.var && checks.ordered->precedes(u, s.var)) {
              minimal = false;
              break;
            }
          }
        }
        if (!minimal)
          ordered = {"ordered", false, step_no,
                     improvable ? "a smaller index was able to flip"
                                : "flipped index was not improvable"};
      }

      if (checks.step_steepest && steepest.pass) {
        Fitness delta = checked_sub(fy, fx);
        for (int v = 0; v < inst.domain_size(s.var); ++v) {
          if (delta_fitness(inst, x, s.var, v) > delta) {
            steepest = {"step-steepest", false, step_no,
                        "a better value exists for the flipped variable"};
            break;
          }
        }
      }

      x = std::move(y);
    }
  }

  if (structure.pass && ascent.pass) {
    if (!trace.complete) {
      ascent = {"ascent", false, std::nullopt,
                "trace is an exhausted prefix, not an ascent"};
    } else if (!is_local_solution(inst, x)) {
      ascent = {"ascent", false, std::nullopt,
                "final assignment is not a local solution"};
    }
  }

  report.entries.push_back(structure);
  if (checks.ascent) {
    if (!structure.pass)
      ascent = {"ascent", false, structure.violation_step, "structure invalid"};
    report.entries.push_back(ascent);
  }
  if (checks.ordered) {
    if (!structure.pass)
      ordered = {"ordered", false, structure.violation_step, "structure invalid"};
    report.entries.push_back(ordered);
  }
  if (checks.step_steepest) {
    if (!structure.pass)
      steepest = {"step-steepest", false, structure.violation_step,
                  "structure invalid"};
    report.entries.push_back(steepest);
  }
  return report;
}

bool BoundsReport::all_ok() const {
  if (!decomposition_valid || !length_ok) return false;
  return std::all_of(per_variable.begin(), per_variable.end(),
                     [](const VariableBound& b) { return b.ok; });
}

std::string BoundsReport::to_text() const {
  std::ostringstream out;
  out << "BOUNDS decomposition=" << (decomposition_valid ? "valid" : "INVALID")
      << " height=" << height << " v=" << max_domain
      << " base=" << (step_steepest ? 2 : max_domain) << " length=" << length
      << " length_bound=" << length_bound
      << " length_ok=" << (length_ok ? "yes" : "NO") << '\n';
  for (const VariableBound& b : per_variable) {
    out << "FLIPS var=" << b.var << " depth=" << b.depth << " flips=" << b.flips
        << " bound=" << b.bound << ' ' << (b.ok ? "ok" : "VIOLATED") << '\n';
  }
  return out.str();
}

BoundsReport check_bounds(const Instance& inst, const Trace& trace,
                          const TreedepthDecomposition& t, bool step_steepest) {
  BoundsReport report;
  report.step_steepest = step_steepest;
  report.max_domain = inst.max_domain_size();
  report.height = t.height();

  DecompositionCheck check = validate_decomposition(constraint_graph(inst), t);
  report.decomposition_valid = check.valid;
  if (!check.valid)
    throw std::invalid_argument(
        "decomposition is not valid for the instance's constraint graph");

  Fitness base = step_steepest ? 2 : report.max_domain;
  auto power = [&](int exp) -> Fitness {
    Fitness p = 1;
    try {
      for (int i = 0; i < exp; ++i) p = checked_mul(p, base);
    } catch (const OverflowError&) {
      return std::numeric_limits<Fitness>::max();
    }
    return p;
  };

  report.length = trace.length();
  Fitness hbound = power(report.height + 1);
  report.length_bound =
      hbound == std::numeric_limits<Fitness>::max()
          ? hbound
          : checked_mul(hbound, static_cast<Fitness>(inst.num_variables()));
  report.length_ok =
      static_cast<Fitness>(report.length) <= report.length_bound;

  std::map<VarId, int> flips = trace.flip_counts();
  for (const auto& [var, count] : flips) {
    int depth = t.depth(var);
    Fitness bound = power(depth + 1);
    report.per_variable.push_back(
        {var, depth, count, bound, static_cast<Fitness>(count) <= bound});
  }
  return report;
}

}  // namespace ascentlab
