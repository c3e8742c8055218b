#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "ascentlab/vcsp.hpp"

namespace ascentlab {

struct OracleCaps {
  std::uint64_t max_count = 10'000'000;
  std::size_t max_depth = 1'000'000;
};

/// Exhaustive statistics over every maximal strictly-improving step-sequence
/// from one start. Paths, not states, are counted; no memoization. When
/// truncated, min/max are bounds over the explored paths rather than exact.
struct AscentStats {
  std::size_t min_length = 0;
  std::size_t max_length = 0;
  std::uint64_t count = 0;
  bool truncated = false;
  std::set<Assignment> reached_peaks;
  std::string to_text() const;
};

AscentStats enumerate_ascents(const Instance& inst, const Assignment& start,
                              const OracleCaps& caps = {});

/// All assignments with no improving move, in lexicographic order of the
/// (id-sorted) value vectors. Throws when the assignment space exceeds
/// space_cap.
std::vector<Assignment> enumerate_local_solutions(
    const Instance& inst, std::uint64_t space_cap = 1u << 24);

/// Direct exhaustive verification of the smoothing identity
/// fitness(inst - k, y) = max over a of fitness(inst, y + {k=a}): variables
/// outside NS(k) contribute identically to both sides, so y ranges over the
/// scope neighborhood with everything else pinned to zero. Throws when the
/// assignment space over NS(k) exceeds space_cap.
bool smoothing_oracle_check(const Instance& inst, VarId k,
                            std::uint64_t space_cap = 1u << 20);

}  // namespace ascentlab
