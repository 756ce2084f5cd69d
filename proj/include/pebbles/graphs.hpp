#pragma once

#include <string>
#include <vector>

#include "pebbles/position.hpp"

namespace pebbles::graphs {

// Lexicographically smallest Digraph::key() over all vertex relabelings.
// Exponential in the vertex count; intended for at most 7 vertices.
std::string canonical_key(const Digraph& g);

// One representative per isomorphism class of DAGs on exactly n vertices
// (n <= 5), each in the relabeling that attains canonical_key.
std::vector<Digraph> dags_up_to_isomorphism(std::size_t n);

// One representative per isomorphism class of oriented trees on n vertices.
std::vector<Digraph> oriented_trees(std::size_t n);

// True if the underlying undirected graph is a tree.
bool is_oriented_tree(const Digraph& g);

// Every vector of `slots` non-negative counts summing to at most max_total
// (each at most max_each), in lexicographic order.
std::vector<std::vector<std::uint32_t>> bounded_compositions(std::size_t slots, std::uint32_t max_total,
                                                             std::uint32_t max_each);

}  // namespace pebbles::graphs
