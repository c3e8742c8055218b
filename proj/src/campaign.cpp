#include "ascentlab/campaign.hpp"

#include <atomic>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ascentlab/generators.hpp"
#include "ascentlab/io.hpp"
#include "ascentlab/oracle.hpp"
#include "ascentlab/treedepth.hpp"

namespace ascentlab {

namespace {

using nlohmann::json;

int worker_count(std::size_t tasks) {
  unsigned n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("ASCENTLAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  if (n == 0) n = 1;
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  json j = json::parse(json_text);
  ExperimentSpec spec;

  for (const json& ij : j.at("instances")) {
    InstanceSpec is;
    is.id = ij.value("id", "");
    is.path = ij.value("path", "");
    is.generator = ij.value("generator", "");
    is.n = ij.value("n", 0);
    is.d = ij.value("d", 0);
    is.v = ij.value("v", 2);
    is.blocks = ij.value("blocks", 0);
    is.p = ij.value("p", 0.5);
    is.value_range = ij.value("w", 10);
    is.seed = ij.value("seed", 0ull);
    is.count = ij.value("count", 1);
    if (is.path.empty() == is.generator.empty())
      throw std::invalid_argument(
          "each instance needs exactly one of path or generator");
    spec.instances.push_back(std::move(is));
  }
  spec.policies = j.at("policies").get<std::vector<std::string>>();
  spec.order = j.value("order", "desc-index");
  spec.decomposition = j.value("decomposition", "dfs");
  if (j.contains("seeds")) {
    const json& s = j.at("seeds");
    if (s.is_array()) {
      spec.seed_first = s.at(0).get<std::uint64_t>();
      spec.seed_last = s.at(1).get<std::uint64_t>();
    } else {
      spec.seed_first = spec.seed_last = s.get<std::uint64_t>();
    }
  }
  if (spec.seed_last < spec.seed_first)
    throw std::invalid_argument("seed range is empty");
  spec.start = j.value("start", "all-zeros");
  if (j.contains("max_steps"))
    spec.max_steps = j.at("max_steps").get<std::size_t>();
  spec.emit_series = j.value("emit_series", false);
  return spec;
}

std::string RunRecord::to_line() const {
  std::ostringstream out;
  out << "RUN instance=" << instance_id << " gen=\"" << provenance << "\""
      << " n=" << n << " v=" << v << " td=" << td_mode;
  if (treedepth >= 0) out << ':' << treedepth;
  out << " policy=" << policy << " seed=" << seed << " length=" << length
      << " final=" << final_fitness << " complete=" << (complete ? 1 : 0)
      << " verified=" << (verified ? 1 : 0) << " bounds=" << bound_verdict
      << " flips=";
  bool first = true;
  for (const auto& [var, count] : flips) {
    if (!first) out << ',';
    out << var << ':' << count;
    first = false;
  }
  if (first) out << '-';
  out << " wall_ms=" << wall_ms;
  if (!error.empty()) out << " error=\"" << error << "\"";
  return out.str();
}

namespace {

struct PreparedInstance {
  std::string id;
  std::string provenance;
  Instance instance;
};

std::vector<PreparedInstance> prepare_instances(const ExperimentSpec& spec) {
  std::vector<PreparedInstance> out;
  for (const InstanceSpec& is : spec.instances) {
    if (!is.path.empty()) {
      PreparedInstance p;
      p.id = is.id.empty() ? is.path : is.id;
      p.provenance = "file " + is.path;
      p.instance = parse_instance(read_file(is.path));
      out.push_back(std::move(p));
      continue;
    }
    if (is.generator == "star") {
      out.push_back({is.id.empty() ? "star-n" + std::to_string(is.n) : is.id,
                     "star --n " + std::to_string(is.n), gen_star(is.n)});
    } else if (is.generator == "recursive") {
      RecursiveInstance r = gen_recursive(is.n, is.d);
      out.push_back({is.id.empty() ? "recursive-n" + std::to_string(is.n) +
                                         "-d" + std::to_string(is.d)
                                   : is.id,
                     "recursive --n " + std::to_string(is.n) + " --d " +
                         std::to_string(is.d),
                     std::move(r.instance)});
    } else if (is.generator == "snake-blocks") {
      SnakeSearchResult snake = find_snake(is.d + 1);
      out.push_back(
          {is.id.empty() ? "snake-b" + std::to_string(is.blocks) + "-d" +
                               std::to_string(is.d)
                         : is.id,
           "snake-blocks --blocks " + std::to_string(is.blocks) + " --d " +
               std::to_string(is.d),
           gen_snake_blocks(is.blocks, is.d, snake.path)});
    } else if (is.generator == "random") {
      for (int i = 0; i < is.count; ++i) {
        std::uint64_t seed = is.seed + static_cast<std::uint64_t>(i);
        std::string id = "random-n" + std::to_string(is.n) + "-s" +
                         std::to_string(seed);
        out.push_back({is.id.empty() || is.count > 1 ? id : is.id,
                       "random --n " + std::to_string(is.n) + " --v " +
                           std::to_string(is.v) + " --p " + std::to_string(is.p) +
                           " --w " + std::to_string(is.value_range) + " --seed " +
                           std::to_string(seed),
                       gen_random(is.n, is.v, is.p, is.value_range, seed)});
      }
    } else {
      throw std::invalid_argument("unknown generator '" + is.generator + "'");
    }
  }
  return out;
}

Policy make_policy(const std::string& name, const std::string& order,
                   const std::optional<TreedepthDecomposition>& tdd,
                   std::uint64_t seed) {
  auto make_order = [&]() {
    if (order == "tdd") {
      if (!tdd) throw std::invalid_argument("tdd order needs a decomposition");
      return OrderSpec::descendants(*tdd);
    }
    if (order == "desc-index") return OrderSpec::descending_index();
    throw std::invalid_argument("unknown order '" + order + "'");
  };
  if (name == "ordered") return Policy::ordered(make_order());
  if (name == "step-steepest-ordered")
    return Policy::ordered(make_order(), Policy::ValueRule::BestValue);
  if (name == "steepest") return Policy::steepest_neighbor();
  if (name == "first") return Policy::first_improvement();
  if (name == "random") return Policy::random_improvement(seed);
  throw std::invalid_argument("unknown policy '" + name + "'");
}

Assignment make_start(const Instance& inst, const std::string& kind,
                      std::uint64_t seed) {
  if (kind == "all-zeros") return all_zeros(inst);
  if (kind == "random") {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
    Assignment x;
    for (const auto& [id, dom] : inst.variables())
      x[id] = static_cast<int>(rng() % static_cast<std::uint64_t>(dom));
    return x;
  }
  throw std::invalid_argument("unknown start '" + kind + "'");
}

}  // namespace

CampaignResult run_experiment(const ExperimentSpec& spec) {
  CampaignResult result;

  std::vector<PreparedInstance> instances;
  try {
    instances = prepare_instances(spec);
    for (const std::string& p : spec.policies)
      make_policy(p, "desc-index", std::nullopt, 0);  // validate names early
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.summary = std::string("SUMMARY input-error \"") + e.what() + "\"";
    return result;
  }

  struct Task {
    std::size_t instance_idx;
    std::size_t policy_idx;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (std::size_t p = 0; p < spec.policies.size(); ++p)
      for (std::uint64_t s = spec.seed_first; s <= spec.seed_last; ++s)
        tasks.push_back({i, p, s});

  result.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};

  auto run_task = [&](const Task& task, RunRecord& rec) {
    const PreparedInstance& pi = instances[task.instance_idx];
    const std::string& policy_name = spec.policies[task.policy_idx];
    rec.instance_id = pi.id;
    rec.provenance = pi.provenance;
    rec.n = pi.instance.num_variables();
    rec.v = pi.instance.max_domain_size();
    rec.policy = policy_name;
    rec.seed = task.seed;
    auto t0 = std::chrono::steady_clock::now();
    try {
      bool is_ordered =
          policy_name == "ordered" || policy_name == "step-steepest-ordered";
      std::optional<TreedepthDecomposition> tdd;
      rec.td_mode = "none";
      if (is_ordered && spec.order == "tdd") {
        ConstraintGraph g = constraint_graph(pi.instance);
        if (spec.decomposition == "exact") {
          tdd = exact_treedepth(g).decomposition;
          rec.td_mode = "exact";
        } else {
          tdd = dfs_decomposition(g);
          rec.td_mode = "dfs";
        }
        rec.treedepth = tdd->height();
      }

      Policy policy = make_policy(policy_name, spec.order, tdd, task.seed);
      Assignment start = make_start(pi.instance, spec.start, task.seed);
      Trace trace = ascend(pi.instance, start, policy, spec.max_steps);

      rec.length = trace.length();
      rec.final_fitness = trace.final_fitness();
      rec.complete = trace.complete;
      rec.flips = trace.flip_counts();

      VerifyChecks checks;
      if (policy.move_rule == Policy::MoveRule::Ordered)
        checks.ordered = policy.order;
      checks.step_steepest = policy.value_rule == Policy::ValueRule::BestValue &&
                             policy.move_rule != Policy::MoveRule::RandomImprovement;
      rec.verified = verify_trace(pi.instance, trace, checks).all_pass();

      if (is_ordered && tdd) {
        BoundsReport bounds = check_bounds(pi.instance, trace, *tdd,
                                            checks.step_steepest);
        rec.bound_verdict = bounds.all_ok() ? "ok" : "violated";
      } else {
        rec.bound_verdict = "n/a";
      }
      if (spec.emit_series) rec.series_csv = trace_series_csv(trace);
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  };

  int workers = worker_count(tasks.size());
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        run_task(tasks[i], result.records[i]);
      }
    });
  }
  for (std::thread& t : pool) t.join();

  std::size_t violations = 0, unverified = 0, errors = 0, incomplete = 0;
  std::size_t min_len = 0, max_len = 0;
  double mean_len = 0.0;
  bool any_ok = false;
  for (const RunRecord& r : result.records) {
    if (!r.error.empty()) {
      ++errors;
      continue;
    }
    if (r.bound_verdict == "violated") ++violations;
    if (!r.verified) ++unverified;
    if (!r.complete) ++incomplete;
    if (!any_ok || r.length < min_len) min_len = r.length;
    max_len = std::max(max_len, r.length);
    mean_len += static_cast<double>(r.length);
    any_ok = true;
  }
  std::size_t ok_runs = result.records.size() - errors;
  if (ok_runs > 0) mean_len /= static_cast<double>(ok_runs);

  std::ostringstream sum;
  sum << "SUMMARY runs=" << result.records.size() << " errors=" << errors
      << " unverified=" << unverified << " incomplete=" << incomplete
      << " bound_violations=" << violations << " min_length=" << min_len
      << " max_length=" << max_len << " mean_length=" << mean_len;
  result.summary = sum.str();

  if (violations > 0 || unverified > 0 || errors > 0) result.exit_code = 1;
  return result;
}

}  // namespace ascentlab
