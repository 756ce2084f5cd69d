#pragma once

// Closed-form values for structured Blocking Pebbles positions, the tree
// reduction for green play, and a harness that checks every formula against
// the exhaustive solver.

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pebbles/position.hpp"
#include "pebbles/solver.hpp"
#include "pebbles/values.hpp"

namespace pebbles::families {

// A closed-form value together with the numbered case that produced it.
struct CaseValue {
  int case_number = 0;
  Game value;
};

// Single arc u->v with 2k blue and one red pebble on u (colors swapped for
// negative k); empty for k = 0.
Position integer_position(std::int64_t k);

// Blue/red star: center pebbles and one entry per leaf. Green counts must be 0
// for any formula to apply.
struct StarConfig {
  PebbleCount center;
  std::vector<PebbleCount> leaves;
};

Position out_star_position(const StarConfig& c);
Position in_star_position(const StarConfig& c);

// Out-star formulas (five cases).
std::optional<CaseValue> outstar_value(const StarConfig& c);
// In-star formulas (six cases; cases 2-6 need exactly two leaves).
std::optional<CaseValue> instar_value(const StarConfig& c);

// [(a,b),[c,d],[e,f]] on the out-star with two leaves: blue/red on the
// center, the first leaf and the second leaf.
struct K12Config {
  std::uint32_t a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;
  friend bool operator==(const K12Config&, const K12Config&) = default;
};

Position k12_position(const K12Config& c);

// The first K12 case is written with red on the occupied leaf, but worked
// with blue there. Both readings are available; neither is assumed.
enum class K12Reading { BlueLeaf, RedLeaf };

std::optional<CaseValue> k12_value(const K12Config& c, K12Reading reading = K12Reading::BlueLeaf);

// [[a,b],[c,d],[e,f]] on the path 0 -> 1 -> 2, as (blue, red) per vertex.
struct P3Config {
  std::uint32_t a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;
};

Position p3_position(const P3Config& c);
std::optional<CaseValue> p3_value(const P3Config& c);

enum class StarOrientation { In, Out };

// Nimber index of a green star: the center heap for in-stars, the nim sum of
// the leaf heaps for out-stars.
unsigned green_star_value(StarOrientation orientation, std::uint32_t center,
                          std::span<const std::uint32_t> leaves);

// Nim sum of g2, g4, ... for greens g1..gn on a path directed from g1.
unsigned green_path_value(std::span<const std::uint32_t> heaps);

// Transitive triple with greens g1 (source), g2 (middle), g3 (sink).
OutcomeClass triple_outcome(std::uint32_t g1, std::uint32_t g2, std::uint32_t g3);

// Heap size claimed for one green pebble on the sink of the transitive
// tournament on n vertices.
unsigned tournament_value(std::size_t n);

class ReductionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sources S, and O = vertices at the end of an odd-length directed path from
// some source. The result has the apex as vertex 0 (no pebbles) and the
// members of O as 1.. in increasing original label, keeping their pebbles,
// the arcs among them, and an arc from the apex to each.
Position reduce_tree(const Position& tree);

// Vertices of `tree` that land in O, in increasing label order.
std::vector<Vertex> odd_reachable(const Digraph& tree);

// ---------------------------------------------------------------------------
// Verification

struct VerifyBounds {
  std::uint32_t max_k = 3;             // |k| for integer positions
  std::uint32_t max_leaves = 4;        // star leaves
  std::uint32_t max_per_vertex = 4;    // per color, per vertex (heap size for green)
  std::uint32_t max_total = 10;        // total pebbles in a configuration
  std::uint32_t max_path_vertices = 4;
  std::uint32_t min_tournament = 2;
  std::uint32_t max_tournament = 6;
  std::uint32_t max_tree_vertices = 5;
  std::uint32_t max_tree_pebbles = 5;
};

struct CaseRecord {
  std::string key;
  std::string formula;
  std::string solver;
  enum class Status { Match, Mismatch, Skipped } status = Status::Match;
};

struct Mismatch {
  std::string case_key;
  std::string position;  // single-line position file
  std::string formula;
  std::string solver;
};

struct VerificationReport {
  std::string theorem_id;
  std::size_t cases_checked = 0;
  std::size_t skipped = 0;
  // Enumerated configurations not covered by any case (or covered by cases
  // that disagree).
  std::size_t uncovered = 0;
  std::vector<Mismatch> mismatches;
  std::vector<CaseRecord> cases;
  std::vector<std::string> notes;
  std::chrono::duration<double> elapsed{};

  bool passed() const { return mismatches.empty(); }
};

class UnknownTheorem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& theorem_ids();

VerificationReport verify(const std::string& theorem_id, const VerifyBounds& bounds = {},
                          const SolverOptions& solver_options = {});

// Summary table row(s) and tab-separated per-case lines.
std::string format_table(std::span<const VerificationReport> reports);
std::string format_lines(const VerificationReport& report);

}  // namespace pebbles::families
