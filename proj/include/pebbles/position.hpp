#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pebbles {

using Vertex = std::uint32_t;

struct PebbleCount {
  std::uint32_t blue = 0;
  std::uint32_t red = 0;
  std::uint32_t green = 0;

  std::uint32_t total() const { return blue + red + green; }
  bool empty() const { return total() == 0; }

  friend bool operator==(const PebbleCount&, const PebbleCount&) = default;
  friend auto operator<=>(const PebbleCount&, const PebbleCount&) = default;
};

struct Arc {
  Vertex from = 0;
  Vertex to = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

class PositionError : public std::invalid_argument {
 public:
  enum class Kind {
    Cyclic,
    SelfLoop,
    DuplicateArc,
    UnknownVertex,
    NegativeCount,
    BadVertexId,
    WrongPebbleCount,
    Malformed,
  };

  PositionError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// An immutable labeled DAG. Shared between all positions on the same board.
class Digraph {
 public:
  // Throws PositionError on self-loops, duplicate arcs, unknown endpoints or cycles.
  Digraph(std::size_t vertex_count, std::vector<Arc> arcs);

  std::size_t vertex_count() const { return vertex_count_; }
  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const Vertex> in_neighbors(Vertex v) const { return in_[v]; }
  std::span<const Vertex> out_neighbors(Vertex v) const { return out_[v]; }

  // Kahn's algorithm, smallest label first.
  std::span<const Vertex> topological_order() const { return topo_order_; }
  std::uint32_t rank(Vertex v) const { return rank_[v]; }

  // Compact byte encoding of the labeled graph; equal iff the graphs are equal.
  const std::string& key() const { return key_; }

  // If every arc touches one common center and no two leaves are adjacent,
  // the center and whether arcs point away from it.
  struct StarShape {
    Vertex center;
    bool outward;
  };
  const std::optional<StarShape>& star_shape() const { return star_; }

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.key_ == b.key_; }

 private:
  std::size_t vertex_count_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<Vertex>> in_, out_;
  std::vector<Vertex> topo_order_;
  std::vector<std::uint32_t> rank_;
  std::string key_;
  std::optional<StarShape> star_;
};

class Position {
 public:
  // The empty position on zero vertices.
  Position();
  Position(std::size_t vertex_count, std::vector<Arc> arcs, std::vector<PebbleCount> pebbles);
  Position(std::shared_ptr<const Digraph> graph, std::vector<PebbleCount> pebbles);

  const Digraph& graph() const { return *graph_; }
  const std::shared_ptr<const Digraph>& shared_graph() const { return graph_; }
  std::size_t vertex_count() const { return graph_->vertex_count(); }
  std::span<const Arc> arcs() const { return graph_->arcs(); }
  std::span<const PebbleCount> pebbles() const { return pebbles_; }
  const PebbleCount& at(Vertex v) const { return pebbles_[v]; }

  // Same graph, different distribution.
  Position with_pebbles(std::vector<PebbleCount> pebbles) const;

  PebbleCount totals() const;
  bool green_only() const;

  friend bool operator==(const Position& a, const Position& b) {
    return *a.graph_ == *b.graph_ && a.pebbles_ == b.pebbles_;
  }

 private:
  std::shared_ptr<const Digraph> graph_;
  std::vector<PebbleCount> pebbles_;
};

enum class Family { OutStar, InStar, Path, TransitiveTriple, TransitiveTournament, SingleArc };

std::string to_string(Family f);
Family parse_family(std::string_view name);
// Vertices used by the family with parameter n (n is ignored by the fixed
// families single_arc and transitive_triple).
std::size_t family_vertex_count(Family f, std::size_t n);

// Vertex 0 is the center of a star, the source of a path, single arc or
// tournament. Stars use n leaves, paths and tournaments n vertices.
Position build_family(Family f, std::size_t n, std::vector<PebbleCount> pebbles);

// Weakly connected components, each relabeled in increasing original order
// and listed by smallest original vertex.
std::vector<Position> components(const Position& p);

// Same components together with their original vertex labels.
std::vector<std::pair<Position, std::vector<Vertex>>> components_with_labels(const Position& p);

// Disjoint union; the second position's labels are shifted past the first's.
Position disjoint_union(const Position& a, const Position& b);

struct RankPotential {
  std::uint64_t total_pebbles = 0;
  std::uint64_t weighted_rank = 0;
  friend bool operator==(const RankPotential&, const RankPotential&) = default;
  friend auto operator<=>(const RankPotential&, const RankPotential&) = default;
};

RankPotential rank_potential(const Position& p);

// Pretty JSON in the position file format, vertices and arcs sorted.
std::string serialize(const Position& p);
// Single-line JSON form of the same document.
std::string serialize_compact(const Position& p);
Position parse_position(std::string_view text);

// Swap blue and red on every vertex.
Position swap_colors(const Position& p);

// Short pebble listing such as "[(2,1,0),(0,0,0)]".
std::string describe_pebbles(const Position& p);

}  // namespace pebbles
