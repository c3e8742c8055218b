#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ascentlab/search.hpp"
#include "ascentlab/vcsp.hpp"

namespace ascentlab {

/// One instance source for a campaign: an instance file or a generator call.
struct InstanceSpec {
  std::string id;          // record key; generated when omitted
  std::string path;        // instance file, or
  std::string generator;   // star | recursive | snake-blocks | random
  int n = 0, d = 0, v = 2, blocks = 0, value_range = 10;
  double p = 0.5;
  std::uint64_t seed = 0;  // generator seed (random)
  int count = 1;           // random: how many instances, seeds seed, seed+1, ...
};

struct ExperimentSpec {
  std::vector<InstanceSpec> instances;
  std::vector<std::string> policies;  // ordered | step-steepest-ordered |
                                      // steepest | first | random
  std::string order = "desc-index";   // desc-index | tdd
  std::string decomposition = "dfs";  // dfs | exact
  std::uint64_t seed_first = 0, seed_last = 0;
  std::string start = "all-zeros";    // all-zeros | random
  std::optional<std::size_t> max_steps;
  bool emit_series = false;
};

/// Parses the JSON campaign spec format (see README).
ExperimentSpec parse_experiment_spec(const std::string& json_text);

struct RunRecord {
  std::string instance_id;
  std::string provenance;
  int n = 0;
  int v = 0;
  int treedepth = -1;          // -1 when no decomposition was used
  std::string td_mode;         // exact | dfs | none
  std::string policy;
  std::uint64_t seed = 0;
  std::size_t length = 0;
  Fitness final_fitness = 0;
  bool complete = false;
  bool verified = false;
  std::string bound_verdict;   // ok | violated | n/a
  std::map<VarId, int> flips;
  double wall_ms = 0.0;
  std::string error;
  std::string series_csv;      // filled when the spec asks for series

  std::string to_line() const;
};

struct CampaignResult {
  std::vector<RunRecord> records;
  std::string summary;
  int exit_code = 0;  // 0 ok, 1 verification failure, 2 input error
};

/// Runs every (instance, policy, seed) combination. Worker count comes from
/// ASCENTLAB_THREADS (default: hardware concurrency); record order is by
/// task key and independent of scheduling. Reruns of an identical spec
/// produce identical records.
CampaignResult run_experiment(const ExperimentSpec& spec);

}  // namespace ascentlab
