// ascentlab: build VCSP instances, run and verify ascent dynamics, smooth
// variables out, and enumerate ground truth at desk scale.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ascentlab/campaign.hpp"
#include "ascentlab/generators.hpp"
#include "ascentlab/io.hpp"
#include "ascentlab/oracle.hpp"
#include "ascentlab/search.hpp"
#include "ascentlab/smoothing.hpp"
#include "ascentlab/treedepth.hpp"

namespace {

using namespace ascentlab;

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

Instance load(const std::string& path) {
  return parse_instance(read_file(path));
}

Assignment start_assignment(const Instance& inst, const std::string& spec) {
  if (spec == "all-zeros") return all_zeros(inst);
  Trace t = parse_trace(read_file(spec));
  return t.start;
}

struct DecompositionChoice {
  TreedepthDecomposition tdd;
  std::string mode;
};

DecompositionChoice choose_decomposition(const Instance& inst,
                                         const std::string& tdd_file,
                                         bool exact) {
  if (!tdd_file.empty())
    return {parse_decomposition(read_file(tdd_file)), "file"};
  ConstraintGraph g = constraint_graph(inst);
  if (exact) return {exact_treedepth(g).decomposition, "exact"};
  return {dfs_decomposition(g), "dfs"};
}

Policy make_policy(const std::string& name, const std::string& order,
                   const std::optional<TreedepthDecomposition>& tdd,
                   std::uint64_t seed) {
  auto make_order = [&]() {
    if (order == "tdd") return OrderSpec::descendants(*tdd);
    return OrderSpec::descending_index();
  };
  if (name == "ordered") return Policy::ordered(make_order());
  if (name == "step-steepest-ordered")
    return Policy::ordered(make_order(), Policy::ValueRule::BestValue);
  if (name == "steepest") return Policy::steepest_neighbor();
  if (name == "first") return Policy::first_improvement();
  if (name == "random") return Policy::random_improvement(seed);
  throw CLI::ValidationError("--policy", "unknown policy " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ascent dynamics laboratory for valued CSP fitness landscapes"};
  app.require_subcommand(1);

  std::string input, output, report_path, series_path, trace_path, tdd_path;
  std::string start_spec = "all-zeros";
  std::string policy_name = "ordered";
  std::string order_name = "desc-index";
  bool exact_td = false;

  // ---- generate ----------------------------------------------------------
  auto* generate = app.add_subcommand(
      "generate", "construct star, recursive, snake-block, or random instances");
  generate->require_subcommand(1);
  int gn = 2, gd = 1, gv = 2, gblocks = 1, gw = 10;
  double gp = 0.5;
  std::uint64_t gseed = 0;
  std::string snake_file;
  std::optional<std::uint64_t> snake_budget;

  auto* g_star = generate->add_subcommand("star", "star landscape on 2n+1 bits");
  g_star->add_option("--n", gn, "left/right set size")->required();
  g_star->add_option("--output,-o", output, "instance file (default stdout)");

  auto* g_rec = generate->add_subcommand(
      "recursive", "chained-star landscape on 2^d blocks of n bits");
  g_rec->add_option("--n", gn, "block size")->required();
  g_rec->add_option("--d", gd, "levels")->required();
  g_rec->add_option("--output,-o", output, "instance file");

  auto* g_snake = generate->add_subcommand(
      "snake", "search for a snake path in the d-dimensional hypercube");
  g_snake->add_option("--d", gd, "hypercube dimension")->required();
  std::uint64_t budget_opt = 0;
  g_snake->add_option("--budget", budget_opt,
                      "node budget (omit for exhaustive search, d <= 6)");
  g_snake->add_option("--output,-o", output, "snake file");

  auto* g_blocks = generate->add_subcommand(
      "snake-blocks", "disjoint snake constraints over blocks of d+1 bits");
  g_blocks->add_option("--blocks", gblocks, "number of blocks")->required();
  g_blocks->add_option("--d", gd, "treedepth (block arity d+1)")->required();
  g_blocks->add_option("--snake", snake_file, "snake file (default: search)");
  g_blocks->add_option("--output,-o", output, "instance file");

  auto* g_random = generate->add_subcommand(
      "random", "binary constraints on Erdos-Renyi edges, uniform values");
  g_random->add_option("--n", gn, "variables")->required();
  g_random->add_option("--v", gv, "domain size");
  g_random->add_option("--p", gp, "edge probability");
  g_random->add_option("--w", gw, "value range (entries in [-w, w])");
  g_random->add_option("--seed", gseed, "generator seed");
  g_random->add_option("--output,-o", output, "instance file");

  // ---- decompose ---------------------------------------------------------
  auto* decompose = app.add_subcommand(
      "decompose", "compute and validate a treedepth decomposition");
  decompose->add_option("--input,-i", input, "instance file")->required();
  decompose->add_flag("--exact-td", exact_td, "exact solver (<= 20 vertices)");
  decompose->add_option("--output,-o", output, "decomposition file");
  std::string graph_out;
  decompose->add_option("--emit-graph", graph_out, "constraint graph file");

  // ---- ascend ------------------------------------------------------------
  auto* ascend_cmd = app.add_subcommand("ascend", "run one ascent and verify it");
  ascend_cmd->add_option("--input,-i", input, "instance file")->required();
  ascend_cmd->add_option("--start", start_spec, "all-zeros or a trace file");
  ascend_cmd->add_option("--policy", policy_name,
                         "ordered|step-steepest-ordered|steepest|first|random");
  ascend_cmd->add_option("--order", order_name, "desc-index|tdd");
  ascend_cmd->add_option("--tdd", tdd_path, "decomposition file for --order tdd");
  ascend_cmd->add_flag("--exact-td", exact_td, "exact decomposition");
  std::uint64_t run_seed = 0;
  ascend_cmd->add_option("--seed", run_seed, "seed for random policy");
  std::size_t max_steps = 0;
  ascend_cmd->add_option("--max-steps", max_steps, "step budget (0 = default)");
  ascend_cmd->add_option("--output,-o", output, "trace file");
  ascend_cmd->add_option("--emit-series", series_path, "fitness-vs-step CSV");
  bool check_bounds_flag = false;
  ascend_cmd->add_flag("--check-bounds", check_bounds_flag,
                       "check ordered-ascent length and flip bounds");

  // ---- verify ------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "re-check a recorded trace");
  verify->add_option("--input,-i", input, "instance file")->required();
  verify->add_option("--trace", trace_path, "trace file")->required();
  std::string verify_order;
  verify->add_option("--order", verify_order,
                     "also check ordered minimality: desc-index|tdd");
  verify->add_option("--tdd", tdd_path, "decomposition file for --order tdd");
  verify->add_flag("--exact-td", exact_td, "exact decomposition");
  bool verify_steepest = false;
  verify->add_flag("--step-steepest", verify_steepest,
                   "also check step-steepest value choice");
  verify->add_flag("--check-bounds", check_bounds_flag,
                   "also check the ordered-ascent bounds");

  // ---- smooth ------------------------------------------------------------
  auto* smooth_cmd = app.add_subcommand("smooth", "smooth one variable out");
  smooth_cmd->add_option("--input,-i", input, "instance file")->required();
  int smooth_var = 0;
  smooth_cmd->add_option("--var", smooth_var, "variable to smooth out")->required();
  smooth_cmd->add_option("--output,-o", output, "smoothed instance file");
  smooth_cmd->add_option("--report", report_path, "smoothing record file");

  // ---- enumerate ---------------------------------------------------------
  auto* enumerate = app.add_subcommand(
      "enumerate", "exhaustively enumerate every ascent from a start");
  enumerate->add_option("--input,-i", input, "instance file")->required();
  enumerate->add_option("--start", start_spec, "all-zeros or a trace file");
  OracleCaps caps;
  enumerate->add_option("--max-count", caps.max_count, "path count cap");
  enumerate->add_option("--max-depth", caps.max_depth, "path depth cap");

  // ---- campaign ----------------------------------------------------------
  auto* campaign = app.add_subcommand(
      "campaign", "run an experiment spec over a worker pool");
  std::string spec_path, records_path, series_dir;
  campaign->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
  campaign->add_option("--records", records_path, "records file (default stdout)");
  campaign->add_option("--series-dir", series_dir,
                       "directory for per-run CSV series");

  CLI11_PARSE(app, argc, argv);

  try {
    if (g_star->parsed()) {
      Instance inst = gen_star(gn);
      emit(output, write_instance(inst, {"generator: star n=" + std::to_string(gn)}));
    } else if (g_rec->parsed()) {
      RecursiveInstance r = gen_recursive(gn, gd);
      std::string weights = "weights:";
      for (std::size_t k = 0; k < r.weights.w.size(); ++k)
        weights += " w" + std::to_string(k) + "=" + std::to_string(r.weights.w[k]);
      emit(output, write_instance(r.instance,
                                  {"generator: recursive n=" + std::to_string(gn) +
                                       " d=" + std::to_string(gd),
                                   weights}));
    } else if (g_snake->parsed()) {
      if (g_snake->count("--budget")) snake_budget = budget_opt;
      SnakeSearchResult res = find_snake(gd, snake_budget);
      std::cerr << "snake dimension=" << gd << " length=" << res.path.length()
                << (res.optimal ? " (exact)" : " (budgeted, best found)")
                << " nodes=" << res.nodes_explored << '\n';
      emit(output, write_snake(res.path));
    } else if (g_blocks->parsed()) {
      SnakePath snake;
      if (snake_file.empty())
        snake = find_snake(gd + 1).path;
      else
        snake = parse_snake(read_file(snake_file));
      Instance inst = gen_snake_blocks(gblocks, gd, snake);
      emit(output,
           write_instance(inst, {"generator: snake-blocks blocks=" +
                                     std::to_string(gblocks) + " d=" +
                                     std::to_string(gd) + " snake-length=" +
                                     std::to_string(snake.length())}));
    } else if (g_random->parsed()) {
      Instance inst = gen_random(gn, gv, gp, gw, gseed);
      emit(output, write_instance(
                       inst, {"generator: random n=" + std::to_string(gn) +
                              " v=" + std::to_string(gv) + " p=" + std::to_string(gp) +
                              " w=" + std::to_string(gw) +
                              " seed=" + std::to_string(gseed)}));
    } else if (decompose->parsed()) {
      Instance inst = load(input);
      ConstraintGraph g = constraint_graph(inst);
      if (!graph_out.empty()) write_file(graph_out, write_graph(g));
      DecompositionChoice choice = choose_decomposition(inst, "", exact_td);
      DecompositionCheck check = validate_decomposition(g, choice.tdd);
      std::cout << "TDD height=" << choice.tdd.height() << " mode=" << choice.mode
                << " valid=" << (check.valid ? "true" : "false") << '\n';
      if (!output.empty()) write_file(output, write_decomposition(choice.tdd));
      return check.valid ? 0 : 1;
    } else if (ascend_cmd->parsed()) {
      Instance inst = load(input);
      std::optional<TreedepthDecomposition> tdd;
      std::string td_mode = "none";
      bool ordered = policy_name == "ordered" ||
                     policy_name == "step-steepest-ordered";
      if (ordered && order_name == "tdd") {
        DecompositionChoice choice = choose_decomposition(inst, tdd_path, exact_td);
        tdd = std::move(choice.tdd);
        td_mode = choice.mode;
      }
      Policy policy = make_policy(policy_name, order_name, tdd, run_seed);
      Assignment start = start_assignment(inst, start_spec);
      std::optional<std::size_t> budget;
      if (max_steps > 0) budget = max_steps;
      Trace trace = ascend(inst, start, policy, budget);

      VerifyChecks checks;
      if (ordered) checks.ordered = policy.order;
      checks.step_steepest = policy_name == "step-steepest-ordered" ||
                             policy_name == "steepest";
      CheckReport report = verify_trace(inst, trace, checks);

      std::cout << "ASCENT policy=" << policy.describe() << " td=" << td_mode
                << (tdd ? ":" + std::to_string(tdd->height()) : "")
                << " length=" << trace.length() << " start_fitness="
                << trace.start_fitness << " final=" << trace.final_fitness()
                << " complete=" << (trace.complete ? 1 : 0) << '\n';
      std::cout << report.to_text();
      bool ok = report.all_pass();
      if (check_bounds_flag && tdd) {
        BoundsReport bounds =
            check_bounds(inst, trace, *tdd, checks.step_steepest);
        std::cout << bounds.to_text();
        ok = ok && bounds.all_ok();
      }
      if (!output.empty()) write_file(output, write_trace(trace));
      if (!series_path.empty()) write_file(series_path, trace_series_csv(trace));
      return ok ? 0 : 1;
    } else if (verify->parsed()) {
      Instance inst = load(input);
      Trace trace = parse_trace(read_file(trace_path));
      std::optional<TreedepthDecomposition> tdd;
      VerifyChecks checks;
      if (verify_order == "tdd") {
        DecompositionChoice choice = choose_decomposition(inst, tdd_path, exact_td);
        tdd = std::move(choice.tdd);
        checks.ordered = OrderSpec::descendants(*tdd);
      } else if (verify_order == "desc-index") {
        checks.ordered = OrderSpec::descending_index();
      }
      checks.step_steepest = verify_steepest;
      CheckReport report = verify_trace(inst, trace, checks);
      std::cout << report.to_text();
      bool ok = report.all_pass();
      if (check_bounds_flag && tdd) {
        BoundsReport bounds = check_bounds(inst, trace, *tdd, verify_steepest);
        std::cout << bounds.to_text();
        ok = ok && bounds.all_ok();
      }
      return ok ? 0 : 1;
    } else if (smooth_cmd->parsed()) {
      Instance inst = load(input);
      auto [smoothed, record] = smooth(inst, smooth_var);
      emit(output, write_instance(
                       smoothed, {"smoothed: var " + std::to_string(smooth_var)}));
      if (!report_path.empty())
        write_file(report_path, record.to_text());
      else if (!output.empty())
        std::cout << record.to_text();
    } else if (enumerate->parsed()) {
      Instance inst = load(input);
      Assignment start = start_assignment(inst, start_spec);
      AscentStats stats = enumerate_ascents(inst, start, caps);
      std::cout << stats.to_text();
    } else if (campaign->parsed()) {
      ExperimentSpec spec = parse_experiment_spec(read_file(spec_path));
      CampaignResult result = run_experiment(spec);
      std::ostringstream records;
      for (const RunRecord& r : result.records) records << r.to_line() << '\n';
      records << result.summary << '\n';
      emit(records_path, records.str());
      if (spec.emit_series && !series_dir.empty()) {
        std::filesystem::create_directories(series_dir);
        for (const RunRecord& r : result.records) {
          if (r.series_csv.empty()) continue;
          write_file(series_dir + "/" + r.instance_id + "-" + r.policy + "-s" +
                         std::to_string(r.seed) + ".csv",
                     r.series_csv);
        }
      }
      return result.exit_code;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
