#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "pebbles/concurrent_map.hpp"
#include "pebbles/position.hpp"
#include "pebbles/rules.hpp"
#include "pebbles/values.hpp"

namespace pebbles {

// L: Left wins whoever starts. R: Right wins. P: the player to move loses.
// N: the player to move wins.
enum class OutcomeClass { L, R, P, N };

char to_char(OutcomeClass o);
OutcomeClass outcome_of(Game value);

struct SolverOptions {
  // Maximum number of positions expanded by a single query.
  std::uint64_t node_budget = 10'000'000;
  bool use_memo = true;
  // Memoize star positions up to a permutation of their leaves.
  bool star_symmetry = false;
  // Drop pay-two moves that remove one own and one green pebble but place the
  // green one.
  bool prune_green_placement = false;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotImpartial : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exhaustive evaluator. All queries are const and may run concurrently on
// one Solver; the memo tables are shared.
class Solver {
 public:
  explicit Solver(SolverOptions options = {});

  Game game_value(const Position& p) const;
  unsigned grundy(const Position& p) const;
  OutcomeClass outcome(const Position& p) const { return outcome_of(game_value(p)); }

  const SolverOptions& options() const { return options_; }
  std::size_t value_memo_size() const { return values_.size(); }
  std::size_t grundy_memo_size() const { return grundy_.size(); }

 private:
  struct Query;

  Game value_connected(const Position& p, Query& q) const;
  unsigned grundy_connected(const Position& p, Query& q) const;
  std::string memo_key(const Position& p) const;

  SolverOptions options_;
  mutable ConcurrentMap<std::string, std::uint32_t> values_;
  mutable ConcurrentMap<std::string, unsigned> grundy_;
};

}  // namespace pebbles
