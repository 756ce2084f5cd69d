#include "pebbles/rules.hpp"

#include <algorithm>

namespace pebbles {

namespace {

std::uint32_t own_count(const PebbleCount& c, Player p) { return p == Player::Left ? c.blue : c.red; }
std::uint32_t opponent_count(const PebbleCount& c, Player p) { return p == Player::Left ? c.red : c.blue; }
std::uint32_t& own_ref(PebbleCount& c, Player p) { return p == Player::Left ? c.blue : c.red; }

char own_letter(Player p) { return p == Player::Left ? 'b' : 'r'; }

// Blocking: no pebble of a player's own color may arrive on a vertex that
// holds any of the opponent's color. Green never blocks and is never blocked.
bool blocked(const PebbleCount& destination, Player p) { return opponent_count(destination, p) > 0; }

void append_moves(std::vector<Move>& out, const Position& p, Player player, Vertex v) {
  const PebbleCount& here = p.at(v);
  const std::uint32_t own = own_count(here, player);
  const std::uint32_t green = here.green;
  const Digraph& g = p.graph();

  // Neighbors are merged so the output comes out sorted by `to`.
  std::vector<std::pair<Vertex, MoveKind>> targets;
  for (Vertex u : g.in_neighbors(v)) targets.emplace_back(u, MoveKind::Slide);
  for (Vertex w : g.out_neighbors(v)) targets.emplace_back(w, MoveKind::PayTwo);
  std::sort(targets.begin(), targets.end());

  for (auto [to, kind] : targets) {
    const PebbleCount& there = p.at(to);
    const bool own_blocked = blocked(there, player);
    if (kind == MoveKind::Slide) {
      for (std::uint32_t o = 0; o <= own; ++o) {
        if (o > 0 && own_blocked) break;
        for (std::uint32_t gr = (o == 0 ? 1 : 0); gr <= green; ++gr)
          out.push_back({player, MoveKind::Slide, v, to, o, gr, PlacedColor::Own});
      }
    } else {
      if (green >= 2) out.push_back({player, MoveKind::PayTwo, v, to, 0, 2, PlacedColor::Green});
      if (own >= 1 && green >= 1) {
        if (!own_blocked) out.push_back({player, MoveKind::PayTwo, v, to, 1, 1, PlacedColor::Own});
        out.push_back({player, MoveKind::PayTwo, v, to, 1, 1, PlacedColor::Green});
      }
      if (own >= 2 && !own_blocked) out.push_back({player, MoveKind::PayTwo, v, to, 2, 0, PlacedColor::Own});
    }
  }
}

}  // namespace

char to_char(Player p) { return p == Player::Left ? 'L' : 'R'; }

std::vector<Move> legal_moves(const Position& p, Player player) {
  std::vector<Move> moves;
  for (Vertex v = 0; v < p.vertex_count(); ++v) append_moves(moves, p, player, v);
  return moves;
}

std::vector<PebbleCount> apply_move_unchecked(std::span<const PebbleCount> pebbles, const Move& m) {
  std::vector<PebbleCount> next(pebbles.begin(), pebbles.end());
  PebbleCount& from = next[m.from];
  PebbleCount& to = next[m.to];
  own_ref(from, m.player) -= m.own_moved;
  from.green -= m.green_moved;
  if (m.kind == MoveKind::Slide) {
    own_ref(to, m.player) += m.own_moved;
    to.green += m.green_moved;
  } else if (m.placed_color == PlacedColor::Own) {
    own_ref(to, m.player) += 1;
  } else {
    to.green += 1;
  }
  return next;
}

Position apply_move(const Position& p, const Move& m) {
  using Clause = IllegalMove::Clause;
  const std::size_t n = p.vertex_count();
  if (m.from >= n || m.to >= n) throw IllegalMove(Clause::Adjacency, "move references an unknown vertex");
  const Digraph& g = p.graph();
  auto contains = [](std::span<const Vertex> list, Vertex x) {
    return std::find(list.begin(), list.end(), x) != list.end();
  };
  if (m.kind == MoveKind::Slide) {
    if (!contains(g.in_neighbors(m.from), m.to))
      throw IllegalMove(Clause::Adjacency, "slide target must be an in-neighbor of the source vertex");
    if (m.own_moved + m.green_moved == 0)
      throw IllegalMove(Clause::Supply, "a slide must move at least one pebble");
  } else {
    if (!contains(g.out_neighbors(m.from), m.to))
      throw IllegalMove(Clause::Adjacency, "pay-two target must be an out-neighbor of the source vertex");
    if (m.own_moved + m.green_moved != 2)
      throw IllegalMove(Clause::PayTwoArity, "a pay-two move removes exactly two pebbles");
    if (m.placed_color == PlacedColor::Own && m.own_moved == 0)
      throw IllegalMove(Clause::PayTwoArity, "cannot place an own-color pebble without removing one");
    if (m.placed_color == PlacedColor::Green && m.green_moved == 0)
      throw IllegalMove(Clause::PayTwoArity, "cannot place a green pebble without removing one");
  }
  const PebbleCount& here = p.at(m.from);
  if (own_count(here, m.player) < m.own_moved || here.green < m.green_moved)
    throw IllegalMove(Clause::Supply, "not enough pebbles on vertex " + std::to_string(m.from));
  const bool places_own = m.kind == MoveKind::Slide ? m.own_moved > 0 : m.placed_color == PlacedColor::Own;
  if (places_own && blocked(p.at(m.to), m.player))
    throw IllegalMove(Clause::Blocking, std::string(m.player == Player::Left ? "blue" : "red") +
                                            " pebbles cannot move onto vertex " + std::to_string(m.to) +
                                            ", which holds opposing pebbles");
  return p.with_pebbles(apply_move_unchecked(p.pebbles(), m));
}

std::string render(const Move& m) {
  const char own = own_letter(m.player);
  std::string counts;
  auto add = [&](char letter, std::uint32_t k) {
    if (k == 0) return;
    if (!counts.empty()) counts += ",";
    counts += std::string(1, letter) + "=" + std::to_string(k);
  };
  add(own, m.own_moved);
  add('g', m.green_moved);
  std::string out(1, to_char(m.player));
  if (m.kind == MoveKind::Slide) {
    out += " slide " + std::to_string(m.from) + "->" + std::to_string(m.to) + " [" + counts + "]";
  } else {
    char placed = m.placed_color == PlacedColor::Own ? own : 'g';
    out += " pay2 " + std::to_string(m.from) + "->" + std::to_string(m.to) + " [" + counts + " -> place " +
           std::string(1, placed) + "]";
  }
  return out;
}

}  // namespace pebbles
