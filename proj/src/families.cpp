#include "pebbles/families.hpp"

#include <algorithm>
#include <deque>

#include "pebbles/graphs.hpp"

namespace pebbles::families {

namespace {

using Int = std::int64_t;

Int floor_half(Int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

Game switch_of(Int left, Int right) { return make_game({integer(left)}, {integer(right)}); }

bool no_green(const PebbleCount& c) { return c.green == 0; }

bool blue_red_only(const StarConfig& c) {
  return no_green(c.center) && std::all_of(c.leaves.begin(), c.leaves.end(), no_green);
}

struct LeafTotals {
  Int blue = 0;
  Int red = 0;
  bool mixed_leaf = false;  // some leaf holds both colors
};

LeafTotals leaf_totals(const StarConfig& c) {
  LeafTotals t;
  for (const auto& leaf : c.leaves) {
    t.blue += leaf.blue;
    t.red += leaf.red;
    if (leaf.blue > 0 && leaf.red > 0) t.mixed_leaf = true;
  }
  return t;
}

// Applies the listed cases in order; configurations matched by several
// cases that disagree get no value.
std::optional<CaseValue> resolve(const std::vector<CaseValue>& matches) {
  if (matches.empty()) return std::nullopt;
  for (const auto& m : matches)
    if (m.value != matches.front().value) return std::nullopt;
  return matches.front();
}

bool is(const PebbleCount& c, std::uint32_t blue, std::uint32_t red) {
  return c.blue == blue && c.red == red && c.green == 0;
}

}  // namespace

Position integer_position(std::int64_t k) {
  PebbleCount source;
  if (k > 0) source = {static_cast<std::uint32_t>(2 * k), 1, 0};
  if (k < 0) source = {1, static_cast<std::uint32_t>(-2 * k), 0};
  return build_family(Family::SingleArc, 1, {source, {}});
}

Position out_star_position(const StarConfig& c) {
  std::vector<PebbleCount> pebbles{c.center};
  pebbles.insert(pebbles.end(), c.leaves.begin(), c.leaves.end());
  return build_family(Family::OutStar, c.leaves.size(), std::move(pebbles));
}

Position in_star_position(const StarConfig& c) {
  std::vector<PebbleCount> pebbles{c.center};
  pebbles.insert(pebbles.end(), c.leaves.begin(), c.leaves.end());
  return build_family(Family::InStar, c.leaves.size(), std::move(pebbles));
}

std::optional<CaseValue> outstar_value(const StarConfig& c) {
  if (c.leaves.empty() || !blue_red_only(c)) return std::nullopt;
  const Int bc = c.center.blue, rc = c.center.red;
  const LeafTotals t = leaf_totals(c);
  const Int bl = t.blue, rl = t.red;
  std::vector<CaseValue> matches;
  if (rc == 0 && rl == 0 && bc + bl >= 1) matches.push_back({1, integer(3 * bl - 2 + 2 * bc)});
  if (bc >= 1 && rc == 0 && bl >= 1 && rl >= 1 && !t.mixed_leaf)
    matches.push_back({2, integer(3 * bl - 2 + 2 * (bc - 1))});
  const bool empty_center = bc == 0 && rc == 0;
  if (empty_center && bl == 1 && rl == 1) matches.push_back({3, star()});
  if (empty_center && bl >= 2 && rl == 1 && !t.mixed_leaf) matches.push_back({4, switch_of(3 * (bl - 1) - 2, 0)});
  if (empty_center && bl >= 2 && rl >= 2 && !t.mixed_leaf)
    matches.push_back({5, switch_of(3 * (bl - 1) - 2, -(3 * (rl - 1) - 2))});
  return resolve(matches);
}

std::optional<CaseValue> instar_value(const StarConfig& c) {
  if (c.leaves.empty() || !blue_red_only(c)) return std::nullopt;
  const Int bc = c.center.blue, rc = c.center.red;
  const LeafTotals t = leaf_totals(c);
  std::vector<CaseValue> matches;
  if (t.blue >= 1 && bc >= 1 && rc == 0 && t.red == 0) matches.push_back({1, integer(3 * bc + 2 * t.blue - 2)});

  if (c.leaves.size() == 2) {
    for (int order = 0; order < 2; ++order) {
      const PebbleCount& x = c.leaves[order];
      const PebbleCount& y = c.leaves[1 - order];
      const Int a = x.blue;
      if (is(c.center, 0, 0)) {
        if (is(x, 1, 0) && is(y, 0, 1)) matches.push_back({2, zero()});
        if (is(x, 2, 0) && is(y, 0, 2)) matches.push_back({2, star()});
        if (x.red == 0 && a >= 2 && is(y, 0, 1)) matches.push_back({3, integer(2 * a - 2)});
        if (x.red == 0 && a >= 3 && is(y, 0, 2)) matches.push_back({4, switch_of(2 * a - 6, 0)});
        if (x.red == 0 && a >= 3 && y.blue == 0 && y.red >= 3)
          matches.push_back({5, switch_of(2 * a - 6, -2 * Int{y.red} + 6)});
      }
      if (c.center.red == 0 && c.center.blue >= 1 && x.red == 0 && x.blue >= 1 && y.blue == 0 && y.red >= 2)
        matches.push_back({6, integer(3 * Int{c.center.blue} + 2 * Int{x.blue} - 5)});
    }
  }
  return resolve(matches);
}

Position k12_position(const K12Config& c) {
  return build_family(Family::OutStar, 2, {{c.a, c.b, 0}, {c.c, c.d, 0}, {c.e, c.f, 0}});
}

std::optional<CaseValue> k12_value(const K12Config& k, K12Reading reading) {
  std::vector<CaseValue> matches;
  const Int a = k.a, b = k.b;
  const PebbleCount leaves[2] = {{k.c, k.d, 0}, {k.e, k.f, 0}};
  for (int order = 0; order < 2; ++order) {
    const PebbleCount& x = leaves[order];
    const PebbleCount& y = leaves[1 - order];
    const bool y_empty = y.empty();

    // 1: one occupied leaf (single color), center (a,b) with a >= 1.
    const bool leaf_ok = reading == K12Reading::BlueLeaf ? (x.blue >= 1 && x.red == 0) : (x.red >= 1 && x.blue == 0);
    if (leaf_ok && y_empty) {
      if (a == 1) matches.push_back({1, integer(-floor_half(b))});
      if (a >= 2) matches.push_back({1, switch_of(floor_half(a) - 1, floor_half(a - b) + 1)});
    }
    // 2
    if (a >= 1 && b >= 1 && x.blue >= 1 && x.red == 0 && y.blue == 0 && y.red >= 1)
      matches.push_back({2, integer(floor_half(a - b))});
    // 3
    if (a >= 1 && b >= 1 && x.blue >= 1 && x.red == 0 && y.blue >= 1 && y.red >= 1)
      matches.push_back({3, integer(floor_half(a - 1))});
    if (a == 0 && b == 0) {
      // 4
      if (x.blue >= 1 && x.red >= 1 && y.blue >= 1 && y.red >= 1)
        matches.push_back({4, switch_of(Int{x.blue} + y.blue - 1, -(Int{x.red} + y.red - 1))});
      // 5
      if (x.blue >= 1 && x.red >= 1 && y.blue == 0 && y.red >= 1)
        matches.push_back({5, switch_of(Int{x.blue} - 1, -(3 * (Int{x.red} + y.red) - 5))});
      // 6
      if (x.blue >= 1 && x.red >= 1 && y_empty)
        matches.push_back({6, switch_of(3 * Int{x.blue} - 5, -(3 * Int{x.red} - 5))});
    }
    // 7
    if ((a == 1 || a == 2) && b == 0 && x.blue == 0 && x.red >= 1 && y_empty) matches.push_back({7, zero()});
  }
  return resolve(matches);
}

Position p3_position(const P3Config& c) {
  return build_family(Family::Path, 3, {{c.a, c.b, 0}, {c.c, c.d, 0}, {c.e, c.f, 0}});
}

std::optional<CaseValue> p3_value(const P3Config& p) {
  std::vector<CaseValue> matches;
  // Every case has red only on the sink side and blue only on the source.
  if (p.b == 0 && p.f >= 1 && p.e == 0) {
    const Int a = p.a;
    // 1: [[a,0],[b,0],[0,c]]
    if (p.c >= 1 && p.d == 0) {
      const Int b = p.c, c = p.f;
      (void)c;
      matches.push_back({1, (a == 0 && b == 1) ? zero() : integer(2 * a + 3 * b - 5)});
    }
    // 3: [[a,0],[0,0],[0,b]] with b >= a >= 1
    if (p.c == 0 && p.d == 0 && a >= 1 && Int{p.f} >= a) {
      const Int b = p.f;
      if (a == 1) matches.push_back({3, integer(-3 * b + 2)});
      else if (a == 2) matches.push_back({3, switch_of(0, -3 * b + 5)});
      else matches.push_back({3, switch_of(2 * a - 6, -3 * b + 5)});
    }
  }
  // 2: [[a,0],[0,b],[0,c]] with a, b >= 1, c >= 0
  if (p.b == 0 && p.a >= 1 && p.c == 0 && p.d >= 1 && p.e == 0) {
    const Int b = p.d, c = p.f;
    if (b == 1 && c == 0) matches.push_back({2, zero()});
    else if (p.a == 1) matches.push_back({2, integer(-2 * b - 3 * c + 2)});
    else matches.push_back({2, integer(-2 * b - 3 * c + 4)});
  }
  return resolve(matches);
}

unsigned green_star_value(StarOrientation orientation, std::uint32_t center, std::span<const std::uint32_t> leaves) {
  if (orientation == StarOrientation::In) return center;
  unsigned sum = 0;
  for (auto g : leaves) sum ^= g;
  return sum;
}

unsigned green_path_value(std::span<const std::uint32_t> heaps) {
  unsigned sum = 0;
  for (std::size_t i = 1; i < heaps.size(); i += 2) sum ^= heaps[i];
  return sum;
}

OutcomeClass triple_outcome(std::uint32_t, std::uint32_t g2, std::uint32_t g3) {
  return g2 == g3 ? OutcomeClass::P : OutcomeClass::N;
}

unsigned tournament_value(std::size_t n) { return static_cast<unsigned>(n); }

std::vector<Vertex> odd_reachable(const Digraph& tree) {
  const std::size_t n = tree.vertex_count();
  // reached[v][parity]: some directed path from a source ends at v with that length parity.
  std::vector<std::array<bool, 2>> reached(n, {false, false});
  std::deque<std::pair<Vertex, int>> queue;
  for (Vertex v = 0; v < n; ++v) {
    if (tree.in_neighbors(v).empty()) {
      reached[v][0] = true;
      queue.emplace_back(v, 0);
    }
  }
  while (!queue.empty()) {
    auto [v, parity] = queue.front();
    queue.pop_front();
    for (Vertex w : tree.out_neighbors(v)) {
      if (!reached[w][1 - parity]) {
        reached[w][1 - parity] = true;
        queue.emplace_back(w, 1 - parity);
      }
    }
  }
  std::vector<Vertex> odd;
  for (Vertex v = 0; v < n; ++v)
    if (reached[v][1]) odd.push_back(v);
  return odd;
}

Position reduce_tree(const Position& tree) {
  if (!graphs::is_oriented_tree(tree.graph())) throw ReductionError("reduce_tree needs an oriented tree");
  if (!tree.green_only()) throw ReductionError("reduce_tree needs a green-only distribution");
  const std::vector<Vertex> odd = odd_reachable(tree.graph());
  std::vector<std::int64_t> index(tree.vertex_count(), -1);
  for (std::size_t i = 0; i < odd.size(); ++i) index[odd[i]] = static_cast<std::int64_t>(i + 1);

  std::vector<Arc> arcs;
  std::vector<PebbleCount> pebbles{PebbleCount{}};
  for (std::size_t i = 0; i < odd.size(); ++i) {
    arcs.push_back({0, static_cast<Vertex>(i + 1)});
    pebbles.push_back(tree.at(odd[i]));
  }
  for (const Arc& a : tree.arcs())
    if (index[a.from] > 0 && index[a.to] > 0)
      arcs.push_back({static_cast<Vertex>(index[a.from]), static_cast<Vertex>(index[a.to])});
  return Position(odd.size() + 1, std::move(arcs), std::move(pebbles));
}

}  // namespace pebbles::families
