#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "pebbles/position.hpp"

namespace pebbles {

// Left moves blue and green pebbles, Right moves red and green.
enum class Player { Left, Right };

inline Player opponent(Player p) { return p == Player::Left ? Player::Right : Player::Left; }
char to_char(Player p);

enum class MoveKind { Slide, PayTwo };
enum class PlacedColor { Own, Green };

// Slide: carry own_moved + green_moved >= 1 pebbles from `from` to an
// in-neighbor `to`. PayTwo: remove own_moved + green_moved == 2 pebbles from
// `from` and put one pebble of placed_color on an out-neighbor `to`.
struct Move {
  Player player = Player::Left;
  MoveKind kind = MoveKind::Slide;
  Vertex from = 0;
  Vertex to = 0;
  std::uint32_t own_moved = 0;
  std::uint32_t green_moved = 0;
  PlacedColor placed_color = PlacedColor::Own;

  friend bool operator==(const Move&, const Move&) = default;
};

class IllegalMove : public std::invalid_argument {
 public:
  enum class Clause { Supply, Adjacency, Blocking, PayTwoArity };

  IllegalMove(Clause clause, const std::string& what) : std::invalid_argument(what), clause_(clause) {}
  Clause clause() const { return clause_; }

 private:
  Clause clause_;
};

// Every legal move, sorted by (from, to, kind, own_moved, green_moved,
// placed_color).
std::vector<Move> legal_moves(const Position& p, Player player);

// Validates m against p and returns the successor position.
Position apply_move(const Position& p, const Move& m);

// Successor for a move already known to be legal.
std::vector<PebbleCount> apply_move_unchecked(std::span<const PebbleCount> pebbles, const Move& m);

// `L slide 3->1 [b=2,g=1]`, `R pay2 0->2 [r=1,g=1 -> place r]`.
std::string render(const Move& m);

}  // namespace pebbles
