#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pebbles/graphs.hpp"
#include "pebbles/solver.hpp"

using namespace pebbles;

namespace {

Position random_position(std::mt19937& rng, std::size_t n, int max_count, bool green_only = false) {
  std::uniform_int_distribution<int> coin(0, 1), count(0, max_count);
  std::vector<Arc> arcs;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (coin(rng)) arcs.push_back({i, j});
  std::vector<PebbleCount> pebbles(n);
  for (auto& p : pebbles) {
    p.green = count(rng);
    if (green_only) continue;
    if (coin(rng)) p.blue = count(rng);
    else p.red = count(rng);
  }
  return Position(n, arcs, pebbles);
}

Position star_with(Family f, std::vector<PebbleCount> pebbles) {
  const std::size_t leaves = pebbles.size() - 1;
  return build_family(f, leaves, std::move(pebbles));
}

}  // namespace

TEST_CASE("worked values") {
  const Solver s;
  CHECK(s.game_value(build_family(Family::SingleArc, 0, {{6, 1, 0}, {0, 0, 0}})) == integer(3));
  auto down_pos = build_family(Family::OutStar, 2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 1}});
  CHECK(s.game_value(down_pos) == down());
  CHECK(s.game_value(build_family(Family::OutStar, 2, {{2, 1, 0}, {1, 0, 0}, {0, 1, 0}})) == zero());
  CHECK(s.game_value(Position()) == zero());
}

TEST_CASE("right's three options in the down example") {
  const Solver s;
  auto p = build_family(Family::OutStar, 2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 1}});
  auto both = apply_move(p, Move{Player::Right, MoveKind::Slide, 2, 0, 1, 1, PlacedColor::Own});
  CHECK(both.at(0) == PebbleCount{0, 1, 1});
  CHECK(both.at(2).empty());
  CHECK(s.game_value(both) == zero());
  // Red alone leaves the green on the leaf; either player can still slide it
  // to the center, which leaves 0, so this option is * rather than 0.
  auto red = apply_move(p, Move{Player::Right, MoveKind::Slide, 2, 0, 1, 0, PlacedColor::Own});
  CHECK(s.game_value(red) == star());
  CHECK(oracle::has_value(red, star()));
  auto green = apply_move(p, Move{Player::Right, MoveKind::Slide, 2, 0, 0, 1, PlacedColor::Own});
  CHECK(s.game_value(green) == star());
}

TEST_CASE("grundy values") {
  const Solver s;
  CHECK(s.grundy(star_with(Family::InStar, {{0, 0, 3}, {0, 0, 1}, {0, 0, 2}})) == 3);
  CHECK(s.grundy(star_with(Family::OutStar, {{0, 0, 5}, {0, 0, 1}, {0, 0, 2}, {0, 0, 3}})) == 0);
  CHECK(s.grundy(build_family(Family::Path, 4, {{0, 0, 1}, {0, 0, 2}, {0, 0, 3}, {0, 0, 4}})) == 6);
  CHECK_THROWS_AS(s.grundy(build_family(Family::SingleArc, 0, {{1, 0, 0}, {0, 0, 0}})), NotImpartial);
}

TEST_CASE("outcomes") {
  const Solver s;
  CHECK(s.outcome(Position()) == OutcomeClass::P);
  CHECK(s.outcome(build_family(Family::SingleArc, 0, {{4, 1, 0}, {0, 0, 0}})) == OutcomeClass::L);
  CHECK(s.outcome(build_family(Family::TransitiveTriple, 0, {{0, 0, 5}, {0, 0, 2}, {0, 0, 2}})) ==
        OutcomeClass::P);
  CHECK(outcome_of(star()) == OutcomeClass::N);
  CHECK(outcome_of(integer(-2)) == OutcomeClass::R);
  CHECK(outcome_of(up()) == OutcomeClass::L);
}

TEST_CASE("values agree with the unsimplified game tree") {
  std::mt19937 rng(29);
  const Solver s;
  for (int trial = 0; trial < 120; ++trial) {
    auto p = random_position(rng, 1 + trial % 3, 2);
    Game v = s.game_value(p);
    INFO(serialize_compact(p), " value ", render(v));
    CHECK(oracle::has_value(p, v));
    CHECK(to_char(outcome_of(v)) == oracle::outcome(p));
  }
}

TEST_CASE("grundy agrees with a plain mex") {
  std::mt19937 rng(31);
  const Solver s;
  for (int trial = 0; trial < 150; ++trial) {
    auto p = random_position(rng, 1 + trial % 5, 3, true);
    CHECK(s.grundy(p) == oracle::grundy(p));
  }
}

TEST_CASE("green positions have nimber values") {
  const Solver s;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& g : graphs::dags_up_to_isomorphism(n)) {
      auto graph = std::make_shared<const Digraph>(g);
      for (const auto& counts : graphs::bounded_compositions(n, 6, 6)) {
        std::vector<PebbleCount> pebbles(n);
        for (std::size_t i = 0; i < n; ++i) pebbles[i].green = counts[i];
        Position p(graph, pebbles);
        CHECK(s.game_value(p) == nimber(s.grundy(p)));
      }
    }
  }
}

TEST_CASE("disjoint unions add") {
  std::mt19937 rng(37);
  const Solver s;
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_position(rng, 1 + trial % 3, 2);
    auto b = random_position(rng, 1 + (trial / 3) % 3, 2);
    CHECK(s.game_value(disjoint_union(a, b)) == add(s.game_value(a), s.game_value(b)));
  }
}

TEST_CASE("swapping colors negates") {
  std::mt19937 rng(41);
  const Solver s;
  for (int trial = 0; trial < 80; ++trial) {
    auto p = random_position(rng, 1 + trial % 3, 2);
    CHECK(s.game_value(swap_colors(p)) == negate(s.game_value(p)));
  }
}

TEST_CASE("memo does not change values") {
  std::mt19937 rng(43);
  const Solver cached;
  SolverOptions plain_options;
  plain_options.use_memo = false;
  const Solver plain(plain_options);
  for (int trial = 0; trial < 60; ++trial) {
    auto p = random_position(rng, 1 + trial % 3, 1);
    CHECK(cached.game_value(p) == plain.game_value(p));
  }
  CHECK(cached.value_memo_size() > 0);
  CHECK(plain.value_memo_size() == 0);
}

TEST_CASE("star symmetry key matches the exact key") {
  SolverOptions sym_options;
  sym_options.star_symmetry = true;
  const Solver sym(sym_options);
  const Solver exact;
  std::mt19937 rng(47);
  std::uniform_int_distribution<int> count(0, 2);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t leaves = 1 + trial % 3;
    std::vector<PebbleCount> pebbles(leaves + 1);
    for (auto& p : pebbles) p = {std::uint32_t(count(rng)), 0, std::uint32_t(count(rng))};
    for (std::size_t i = 1; i < pebbles.size(); i += 2) std::swap(pebbles[i].blue, pebbles[i].red);
    for (Family f : {Family::OutStar, Family::InStar}) {
      auto p = build_family(f, leaves, pebbles);
      CHECK(sym.game_value(p) == exact.game_value(p));
    }
  }
}

TEST_CASE("placing green after a mixed pay-two is never needed") {
  SolverOptions pruned_options;
  pruned_options.prune_green_placement = true;
  const Solver pruned(pruned_options);
  const Solver full;
  std::mt19937 rng(53);
  for (int trial = 0; trial < 120; ++trial) {
    auto p = random_position(rng, 1 + trial % 3, 2);
    CHECK(pruned.game_value(p) == full.game_value(p));
  }
}

TEST_CASE("node budget") {
  SolverOptions tight;
  tight.node_budget = 5;
  tight.use_memo = false;
  const Solver s(tight);
  auto p = build_family(Family::Path, 4, {{0, 0, 3}, {0, 0, 3}, {0, 0, 3}, {0, 0, 3}});
  CHECK_THROWS_AS(s.game_value(p), BudgetExhausted);
  CHECK_THROWS_AS(s.grundy(p), BudgetExhausted);
}

TEST_CASE("pebbles on sources of green paths and stars are superfluous") {
  const Solver s;
  for (std::uint32_t extra = 0; extra <= 4; ++extra) {
    CHECK(s.grundy(build_family(Family::Path, 3, {{0, 0, extra}, {0, 0, 2}, {0, 0, 1}})) == 2);
    CHECK(s.grundy(build_family(Family::TransitiveTriple, 0, {{0, 0, extra}, {0, 0, 1}, {0, 0, 3}})) ==
          s.grundy(build_family(Family::TransitiveTriple, 0, {{0, 0, 0}, {0, 0, 1}, {0, 0, 3}})));
    CHECK(s.grundy(build_family(Family::OutStar, 2, {{0, 0, extra}, {0, 0, 3}, {0, 0, 1}})) == 2);
  }
}
