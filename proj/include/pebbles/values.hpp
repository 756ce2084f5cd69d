#pragma once

// Canonical-form values of short partisan games.
//
// Every Game is a handle to an interned canonical form: two Games are equal
// as values iff they are the same handle. The intern table and the operation
// caches are process-wide and safe to use from several threads.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pebbles/dyadic.hpp"

namespace pebbles {

class Game {
 public:
  // The zero game {|}.
  Game() = default;

  std::uint32_t id() const { return id_; }

  std::span<const Game> left_options() const;
  std::span<const Game> right_options() const;
  unsigned birthday() const;

  friend bool operator==(Game, Game) = default;

  static Game from_id(std::uint32_t id) { return Game(id); }

 private:
  explicit Game(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

enum class ValueClass { Number, Nimber, Switch, UpStarFamily, Other };

std::string to_string(ValueClass c);

// n.^ + *k with n != 0 (negative n means down).
struct UpStar {
  int ups = 0;
  unsigned star = 0;
  friend bool operator==(const UpStar&, const UpStar&) = default;
};

class ValueParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Builds the canonical form of {left | right}. Options must themselves be
// canonical, which every Game is.
Game make_game(std::vector<Game> left, std::vector<Game> right);

Game zero();
Game star();
Game up();
Game down();
Game integer(std::int64_t n);
Game number(const DyadicRational& d);
Game nimber(unsigned n);
Game up_multiple(int n);

bool leq(Game g, Game h);
inline bool geq(Game g, Game h) { return leq(h, g); }
inline bool less(Game g, Game h) { return g != h && leq(g, h); }
// g || h: neither g <= h nor h <= g.
inline bool confused(Game g, Game h) { return !leq(g, h) && !leq(h, g); }

Game add(Game g, Game h);
Game negate(Game g);
inline Game subtract(Game g, Game h) { return add(g, negate(h)); }

std::optional<DyadicRational> as_number(Game g);
std::optional<unsigned> as_nimber(Game g);
// Recognizes n.^ + *k for 1 <= |n| <= 64 and k <= 64.
std::optional<UpStar> as_up_star(Game g);

ValueClass classify(Game g);

// ASCII value notation:
//   int | int/2^nat | * | *nat | [nat]^[*[nat]] | [nat]v[*[nat]] | {list|list}
std::string render(Game g);
Game parse_value(std::string_view text);

// Number of distinct canonical forms interned so far.
std::size_t interned_game_count();

}  // namespace pebbles

template <>
struct std::hash<pebbles::Game> {
  std::size_t operator()(pebbles::Game g) const noexcept { return g.id(); }
};
