#include "pebbles/solver.hpp"

#include <algorithm>
#include <array>

namespace pebbles {

namespace {

void append_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

void append_triple(std::string& out, const PebbleCount& c) {
  append_varint(out, c.blue);
  append_varint(out, c.red);
  append_varint(out, c.green);
}

bool is_green_placement(const Move& m) {
  return m.kind == MoveKind::PayTwo && m.own_moved == 1 && m.placed_color == PlacedColor::Green;
}

}  // namespace

char to_char(OutcomeClass o) {
  switch (o) {
    case OutcomeClass::L: return 'L';
    case OutcomeClass::R: return 'R';
    case OutcomeClass::P: return 'P';
    case OutcomeClass::N: return 'N';
  }
  return '?';
}

OutcomeClass outcome_of(Game value) {
  if (value == zero()) return OutcomeClass::P;
  if (leq(zero(), value)) return OutcomeClass::L;
  if (leq(value, zero())) return OutcomeClass::R;
  return OutcomeClass::N;
}

struct Solver::Query {
  std::uint64_t expanded = 0;
};

Solver::Solver(SolverOptions options) : options_(options) {}

std::string Solver::memo_key(const Position& p) const {
  const Digraph& g = p.graph();
  std::string key = g.key();
  const auto& star = g.star_shape();
  if (options_.star_symmetry && star) {
    key.push_back('\x01');
    append_triple(key, p.at(star->center));
    std::vector<PebbleCount> leaves;
    for (Vertex v = 0; v < p.vertex_count(); ++v)
      if (v != star->center) leaves.push_back(p.at(v));
    std::sort(leaves.begin(), leaves.end());
    for (const auto& c : leaves) append_triple(key, c);
  } else {
    key.push_back('\x00');
    for (const auto& c : p.pebbles()) append_triple(key, c);
  }
  return key;
}

Game Solver::game_value(const Position& p) const {
  Query q;
  Game total = zero();
  for (const Position& component : components(p)) total = add(total, value_connected(component, q));
  return total;
}

Game Solver::value_connected(const Position& p, Query& q) const {
  std::string key;
  if (options_.use_memo) {
    key = memo_key(p);
    if (auto hit = values_.find(key)) return Game::from_id(*hit);
  }
  if (++q.expanded > options_.node_budget)
    throw BudgetExhausted("node budget of " + std::to_string(options_.node_budget) + " positions exhausted");

  std::array<std::vector<Game>, 2> options;
  for (Player player : {Player::Left, Player::Right}) {
    auto& out = options[player == Player::Left ? 0 : 1];
    for (const Move& m : legal_moves(p, player)) {
      if (options_.prune_green_placement && is_green_placement(m)) continue;
      out.push_back(value_connected(p.with_pebbles(apply_move_unchecked(p.pebbles(), m)), q));
    }
  }
  Game value = make_game(std::move(options[0]), std::move(options[1]));
  if (options_.use_memo) values_.insert(key, value.id());
  return value;
}

unsigned Solver::grundy(const Position& p) const {
  if (!p.green_only()) throw NotImpartial("grundy requires a green-only position");
  Query q;
  unsigned total = 0;
  for (const Position& component : components(p)) total ^= grundy_connected(component, q);
  return total;
}

unsigned Solver::grundy_connected(const Position& p, Query& q) const {
  std::string key;
  if (options_.use_memo) {
    key = memo_key(p);
    if (auto hit = grundy_.find(key)) return *hit;
  }
  if (++q.expanded > options_.node_budget)
    throw BudgetExhausted("node budget of " + std::to_string(options_.node_budget) + " positions exhausted");

  // Green-only: both players have the same moves.
  std::vector<unsigned> seen;
  for (const Move& m : legal_moves(p, Player::Left))
    seen.push_back(grundy_connected(p.with_pebbles(apply_move_unchecked(p.pebbles(), m)), q));
  std::sort(seen.begin(), seen.end());
  unsigned mex = 0;
  for (unsigned s : seen) {
    if (s == mex) ++mex;
    else if (s > mex) break;
  }
  if (options_.use_memo) grundy_.insert(key, mex);
  return mex;
}

}  // namespace pebbles
