#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ascentlab/generators.hpp"
#include "ascentlab/io.hpp"
#include "ascentlab/oracle.hpp"
#include "ascentlab/search.hpp"
#include "ascentlab/treedepth.hpp"

using namespace ascentlab;

namespace {

bool next_assignment(const Instance& inst, Assignment& x) {
  for (auto it = x.rbegin(); it != x.rend(); ++it) {
    if (it->second + 1 < inst.domain_size(it->first)) {
      ++it->second;
      return true;
    }
    it->second = 0;
  }
  return false;
}

}  // namespace

TEST_CASE("gen_star shape") {
  Instance star = gen_star(2);
  CHECK(star.num_variables() == 5);
  CHECK(star.constraints().size() == 7);  // 2 XOR + 1 center unary + 2 left + 2 unary

  ConstraintGraph g = constraint_graph(star);
  auto [h, tdd] = exact_treedepth(g);
  CHECK(h == 1);

  Trace trace = ascend(star, all_zeros(star),
                       Policy::ordered(OrderSpec::descending_index()));
  CHECK(trace.length() == 13);
}

TEST_CASE("gen_recursive variable count and weights") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 2}, {2, 3}}) {
    RecursiveInstance r = gen_recursive(n, d);
    CHECK(r.instance.num_variables() == (1 << d) * (n + 1) - 1);
    CHECK(r.centers.size() == static_cast<std::size_t>((1 << d) - 1));
    REQUIRE(!r.weights.w.empty());
    CHECK(r.weights.w[0] == 1);
    if (r.weights.w.size() > 1) CHECK(r.weights.w[1] == 2 * n + 3);
    for (std::size_t k = 0; k + 1 < r.weights.w.size(); ++k)
      CHECK(r.weights.w[k + 1] == 2 * n * r.weights.w[k] + 3);
  }
}

TEST_CASE("gen_recursive(n,1) is fitness-identical to gen_star(n)") {
  for (int n : {1, 2, 3}) {
    Instance star = gen_star(n);
    Instance rec = gen_recursive(n, 1).instance;
    REQUIRE(rec.num_variables() == star.num_variables());
    Assignment x = all_zeros(star);
    do {
      CHECK(fitness(star, x) == fitness(rec, x));
    } while (next_assignment(star, x));
  }
}

TEST_CASE("gen_recursive rejects weight overflow") {
  CHECK_THROWS_AS(gen_recursive(1000000, 6), OverflowError);
}

TEST_CASE("recursive construction: >-ordered ascent regression values") {
  // For d >= 2 the >-ordered ascent from all-zeros is NOT unit-increment:
  // the first flip of a variable in a middle block jumps by w_1 = 2n+3
  // (its XOR coupling to the left center fires with nothing to offset it),
  // and every later middle-block up-flip jumps by its w_k. The final
  // fitness does exceed n^(2^d). These deterministic regression values pin
  // the behaviour of the construction as built; the acceptance suite
  // reports the unit-increment discrepancy.
  struct Expected {
    int n, d;
    std::size_t length;
    Fitness final_fitness;
    Fitness target;  // n^(2^d)
    std::size_t first_jump_step;
    Fitness first_jump_delta;  // w_1 = 2n+3
  };
  for (const Expected& e : {Expected{2, 2, 53, 287, 16, 6, 7},
                            Expected{3, 2, 300, 1020, 81, 8, 9},
                            Expected{2, 3, 205, 76435, 256, 6, 7}}) {
    RecursiveInstance r = gen_recursive(e.n, e.d);
    Trace trace = ascend(r.instance, all_zeros(r.instance),
                         Policy::ordered(OrderSpec::descending_index()));
    REQUIRE(trace.complete);
    CHECK(verify_trace(r.instance, trace, {}).all_pass());
    CHECK(trace.length() == e.length);
    CHECK(trace.final_fitness() == e.final_fitness);
    CHECK(trace.final_fitness() > e.target);

    Fitness prev = trace.start_fitness;
    std::size_t first_jump = 0;
    Fitness jump_delta = 0;
    for (std::size_t i = 0; i < trace.steps.size() && first_jump == 0; ++i) {
      Fitness delta = trace.steps[i].fitness_after - prev;
      if (delta != 1) {
        first_jump = i + 1;
        jump_delta = delta;
      }
      prev = trace.steps[i].fitness_after;
    }
    CHECK(first_jump == e.first_jump_step);
    CHECK(jump_delta == e.first_jump_delta);
    CHECK(jump_delta == r.weights.w[1]);
  }
}

TEST_CASE("exact snakes for dimensions 2..5") {
  std::vector<std::size_t> longest = {0, 1, 2, 4, 7, 13};
  for (int dim = 1; dim <= 5; ++dim) {
    SnakeSearchResult res = find_snake(dim);
    CHECK(res.optimal);
    CHECK(res.path.length() == longest[static_cast<std::size_t>(dim)]);
    CHECK(is_valid_snake(res.path));
    // the published lower bound, checked after the fact
    double bound = std::ceil(9.0 / 64.0 * std::pow(2.0, dim));
    CHECK(static_cast<double>(res.path.length()) >= bound);
  }
}

TEST_CASE("budgeted snake search returns a valid best-so-far") {
  SnakeSearchResult res = find_snake(7, 20000);
  CHECK(!res.optimal);
  CHECK(is_valid_snake(res.path));
  CHECK(res.path.length() >= 1);
  CHECK_THROWS_AS(find_snake(7), std::invalid_argument);  // exact mode capped
}

TEST_CASE("snake invariants catch broken paths") {
  SnakePath p;
  p.dimension = 3;
  p.vertices = {0, 1, 3, 2};  // 2 is adjacent to 0: chord
  CHECK(!is_valid_snake(p));
  p.vertices = {1, 0};  // head must be all-zeros
  CHECK(!is_valid_snake(p));
  p.vertices = {0, 3};  // not a unit step
  CHECK(!is_valid_snake(p));
  p.vertices = {0, 1, 3, 7, 6};
  CHECK(is_valid_snake(p));
}

TEST_CASE("snake-block landscapes force the path") {
  for (int dim = 2; dim <= 5; ++dim) {
    SnakePath snake = find_snake(dim).path;
    Instance inst = gen_snake_blocks(1, dim - 1, snake);
    CHECK(inst.num_variables() == dim);
    REQUIRE(inst.constraints().size() == 1);

    // walk the snake: at every codeword except the tail there is exactly
    // one improving move, and it leads to the next codeword
    Assignment x = all_zeros(inst);
    for (std::size_t pos = 0; pos + 1 < snake.vertices.size(); ++pos) {
      std::vector<Move> moves = improving_moves(inst, x);
      REQUIRE(moves.size() == 1);
      x[moves[0].var] = moves[0].new_value;
      CHECK(fitness(inst, x) == static_cast<Fitness>(pos + 1));
      std::uint32_t word = snake.vertices[pos + 1];
      for (int b = 0; b < dim; ++b)
        CHECK(x.at(b + 1) == static_cast<int>((word >> b) & 1));
    }
    CHECK(improving_moves(inst, x).empty());  // tail is a local solution
  }
}

TEST_CASE("multi-block ascents sum the block lengths") {
  SnakePath snake = find_snake(4).path;
  Instance inst = gen_snake_blocks(3, 3, snake);
  CHECK(inst.num_variables() == 12);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Trace trace =
        ascend(inst, all_zeros(inst), Policy::random_improvement(seed));
    REQUIRE(trace.complete);
    CHECK(trace.length() == 3 * snake.length());
    CHECK(trace.final_fitness() ==
          static_cast<Fitness>(3 * snake.length()));
  }
}

TEST_CASE("gen_snake_blocks validates its snake") {
  SnakePath snake = find_snake(3).path;
  CHECK_THROWS_AS(gen_snake_blocks(2, 3, snake), std::invalid_argument);
  SnakePath broken = snake;
  broken.vertices.push_back(broken.vertices.back());
  CHECK_THROWS_AS(gen_snake_blocks(2, 2, broken), std::invalid_argument);
}

TEST_CASE("gen_random determinism and shape") {
  Instance a = gen_random(8, 2, 0.4, 9, 123);
  Instance b = gen_random(8, 2, 0.4, 9, 123);
  CHECK(write_instance(a) == write_instance(b));
  Instance c = gen_random(8, 2, 0.4, 9, 124);
  CHECK(write_instance(a) != write_instance(c));

  for (const Constraint& con : a.constraints()) {
    CHECK(con.arity() == 2);
    for (Fitness v : con.table) {
      CHECK(v >= -9);
      CHECK(v <= 9);
    }
  }
}

TEST_CASE("gen_random endpoints") {
  Instance empty = gen_random(6, 2, 0.0, 5, 1);
  CHECK(empty.constraints().empty());
  CHECK(exact_treedepth(constraint_graph(empty)).height == 0);

  Instance full = gen_random(4, 2, 1.0, 5, 1);
  CHECK(full.constraints().size() == 6);
  CHECK(exact_treedepth(constraint_graph(full)).height == 3);
}
