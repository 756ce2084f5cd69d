#include "pebbles/graphs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace pebbles::graphs {

namespace {

Digraph relabel(const Digraph& g, const std::vector<Vertex>& perm) {
  std::vector<Arc> arcs;
  for (const Arc& a : g.arcs()) arcs.push_back({perm[a.from], perm[a.to]});
  return Digraph(g.vertex_count(), std::move(arcs));
}

// Relabels so that the minimal-key labeling is returned.
Digraph canonical_relabeling(const Digraph& g) {
  std::vector<Vertex> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Digraph> best;
  do {
    Digraph candidate = relabel(g, perm);
    if (!best || candidate.key() < best->key()) best = std::move(candidate);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

void compositions_rec(std::size_t slot, std::uint32_t remaining, std::uint32_t max_each,
                      std::vector<std::uint32_t>& current, std::vector<std::vector<std::uint32_t>>& out) {
  if (slot == current.size()) {
    out.push_back(current);
    return;
  }
  for (std::uint32_t k = 0; k <= std::min(remaining, max_each); ++k) {
    current[slot] = k;
    compositions_rec(slot + 1, remaining - k, max_each, current, out);
  }
  current[slot] = 0;
}

}  // namespace

std::string canonical_key(const Digraph& g) { return canonical_relabeling(g).key(); }

std::vector<Digraph> dags_up_to_isomorphism(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  // Every DAG has a topological labeling, so it suffices to orient each
  // chosen pair forward (i < j); relabeling covers the rest.
  std::map<std::string, Digraph> classes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<Arc> arcs;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1) arcs.push_back({pairs[b].first, pairs[b].second});
    Digraph canonical = canonical_relabeling(Digraph(n, std::move(arcs)));
    classes.emplace(canonical.key(), std::move(canonical));
  }
  std::vector<Digraph> out;
  for (auto& [key, g] : classes) out.push_back(std::move(g));
  return out;
}

bool is_oriented_tree(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0 || g.arcs().size() + 1 != n) return false;
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Arc& a : g.arcs()) {
    Vertex ra = find(a.from), rb = find(a.to);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

std::vector<Digraph> oriented_trees(std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {Digraph(1, {})};
  // Labeled trees from Prüfer sequences, then every orientation.
  std::map<std::string, Digraph> classes;
  std::vector<Vertex> seq(n - 2, 0);
  for (;;) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<std::size_t> degree(n, 1);
    for (Vertex v : seq) ++degree[v];
    for (Vertex v : seq) {
      Vertex leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      edges.emplace_back(leaf, v);
      --degree[leaf];
      --degree[v];
    }
    std::vector<Vertex> last;
    for (Vertex v = 0; v < n; ++v)
      if (degree[v] == 1) last.push_back(v);
    edges.emplace_back(last[0], last[1]);

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
      std::vector<Arc> arcs;
      for (std::size_t b = 0; b < edges.size(); ++b) {
        auto [x, y] = edges[b];
        arcs.push_back(mask >> b & 1 ? Arc{y, x} : Arc{x, y});
      }
      Digraph canonical = canonical_relabeling(Digraph(n, std::move(arcs)));
      classes.emplace(canonical.key(), std::move(canonical));
    }

    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == n) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  std::vector<Digraph> out;
  for (auto& [key, g] : classes) out.push_back(std::move(g));
  return out;
}

std::vector<std::vector<std::uint32_t>> bounded_compositions(std::size_t slots, std::uint32_t max_total,
                                                             std::uint32_t max_each) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> current(slots, 0);
  compositions_rec(0, max_total, max_each, current, out);
  return out;
}

}  // namespace pebbles::graphs
