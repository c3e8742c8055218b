#include "ascentlab/oracle.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "ascentlab/smoothing.hpp"

namespace ascentlab {

std::string AscentStats::to_text() const {
  std::ostringstream out;
  out << "ASCENTS count=" << count << (truncated ? "+ (truncated)" : "")
      << " min_length=" << min_length << " max_length=" << max_length
      << " peaks=" << reached_peaks.size() << '\n';
  return out.str();
}

namespace {

struct Enumerator {
  const Instance& inst;
  const OracleCaps& caps;
  AscentStats stats;

  void dfs(Assignment& x, std::size_t depth) {
    if (stats.truncated) return;
    std::vector<Move> moves = improving_moves(inst, x);
    if (moves.empty()) {
      ++stats.count;
      stats.min_length = std::min(stats.min_length, depth);
      stats.max_length = std::max(stats.max_length, depth);
      stats.reached_peaks.insert(x);
      if (stats.count >= caps.max_count) stats.truncated = true;
      return;
    }
    if (depth >= caps.max_depth) {
      stats.truncated = true;
      return;
    }
    for (const Move& m : moves) {
      int old = x.at(m.var);
      x[m.var] = m.new_value;
      dfs(x, depth + 1);
      x[m.var] = old;
      if (stats.truncated) return;
    }
  }
};

}  // namespace

AscentStats enumerate_ascents(const Instance& inst, const Assignment& start,
                              const OracleCaps& caps) {
  validate_assignment(inst, start);
  Enumerator e{inst, caps, {}};
  e.stats.min_length = std::numeric_limits<std::size_t>::max();
  Assignment x = start;
  e.dfs(x, 0);
  if (e.stats.count == 0) e.stats.min_length = 0;
  return e.stats;
}

std::vector<Assignment> enumerate_local_solutions(const Instance& inst,
                                                  std::uint64_t space_cap) {
  std::uint64_t space = 1;
  for (const auto& [id, dom] : inst.variables()) {
    space = static_cast<std::uint64_t>(
        checked_mul(static_cast<Fitness>(space), dom));
    if (space > space_cap)
      throw std::invalid_argument("assignment space exceeds the oracle cap");
  }

  std::vector<Assignment> solutions;
  Assignment x = all_zeros(inst);
  while (true) {
    if (is_local_solution(inst, x)) solutions.push_back(x);
    // odometer over the id-sorted value vector, last variable fastest
    auto it = x.rbegin();
    for (; it != x.rend(); ++it) {
      if (it->second + 1 < inst.domain_size(it->first)) {
        ++it->second;
        break;
      }
      it->second = 0;
    }
    if (it == x.rend()) break;
  }
  return solutions;
}

bool smoothing_oracle_check(const Instance& inst, VarId k,
                            std::uint64_t space_cap) {
  std::set<VarId> ns = scope_neighborhood(inst, k);
  std::uint64_t space = 1;
  for (VarId v : ns) {
    space = static_cast<std::uint64_t>(
        checked_mul(static_cast<Fitness>(space), inst.domain_size(v)));
    if (space > space_cap)
      throw std::invalid_argument("neighborhood space exceeds the oracle cap");
  }

  auto [smoothed, record] = smooth(inst, k);

  Assignment y = all_zeros(smoothed);
  std::vector<VarId> nbr = record.neighborhood;
  while (true) {
    Fitness lhs = fitness(smoothed, y);
    Assignment extended = y;
    Fitness rhs = std::numeric_limits<Fitness>::min();
    for (int a = 0; a < inst.domain_size(k); ++a) {
      extended[k] = a;
      rhs = std::max(rhs, fitness(inst, extended));
    }
    if (lhs != rhs) return false;

    // advance over the neighborhood variables only
    std::size_t i = nbr.size();
    while (i > 0) {
      --i;
      VarId v = nbr[i];
      if (y[v] + 1 < inst.domain_size(v)) {
        ++y[v];
        break;
      }
      y[v] = 0;
      if (i == 0) return true;
    }
    if (nbr.empty()) return true;
  }
}

}  // namespace ascentlab
