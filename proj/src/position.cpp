#include "pebbles/position.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include <json.hpp>

namespace pebbles {

namespace {

void append_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

std::shared_ptr<const Digraph> empty_graph() {
  static const auto graph = std::make_shared<const Digraph>(0, std::vector<Arc>{});
  return graph;
}

}  // namespace

Digraph::Digraph(std::size_t vertex_count, std::vector<Arc> arcs)
    : vertex_count_(vertex_count), arcs_(std::move(arcs)), in_(vertex_count), out_(vertex_count) {
  std::sort(arcs_.begin(), arcs_.end());
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    if (a.from >= vertex_count_ || a.to >= vertex_count_)
      throw PositionError(PositionError::Kind::UnknownVertex,
                          "arc " + std::to_string(a.from) + "->" + std::to_string(a.to) +
                              " references an unknown vertex");
    if (a.from == a.to)
      throw PositionError(PositionError::Kind::SelfLoop, "self-loop at vertex " + std::to_string(a.from));
    if (i > 0 && arcs_[i - 1] == a)
      throw PositionError(PositionError::Kind::DuplicateArc,
                          "duplicate arc " + std::to_string(a.from) + "->" + std::to_string(a.to));
    out_[a.from].push_back(a.to);
    in_[a.to].push_back(a.from);
  }
  for (auto& list : in_) std::sort(list.begin(), list.end());

  std::vector<std::size_t> indegree(vertex_count_);
  for (Vertex v = 0; v < vertex_count_; ++v) indegree[v] = in_[v].size();
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < vertex_count_; ++v)
    if (indegree[v] == 0) ready.push(v);
  rank_.assign(vertex_count_, 0);
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    rank_[v] = static_cast<std::uint32_t>(topo_order_.size());
    topo_order_.push_back(v);
    for (Vertex w : out_[v])
      if (--indegree[w] == 0) ready.push(w);
  }
  if (topo_order_.size() != vertex_count_)
    throw PositionError(PositionError::Kind::Cyclic, "the arc set contains a directed cycle");

  append_varint(key_, vertex_count_);
  append_varint(key_, arcs_.size());
  for (const Arc& a : arcs_) {
    append_varint(key_, a.from);
    append_varint(key_, a.to);
  }

  if (vertex_count_ >= 2 && arcs_.size() + 1 == vertex_count_) {
    for (Vertex c = 0; c < vertex_count_ && !star_; ++c) {
      if (out_[c].size() == arcs_.size()) star_ = StarShape{c, true};
      else if (in_[c].size() == arcs_.size()) star_ = StarShape{c, false};
    }
  }
}

Position::Position() : graph_(empty_graph()) {}

Position::Position(std::size_t vertex_count, std::vector<Arc> arcs, std::vector<PebbleCount> pebbles)
    : Position(std::make_shared<const Digraph>(vertex_count, std::move(arcs)), std::move(pebbles)) {}

Position::Position(std::shared_ptr<const Digraph> graph, std::vector<PebbleCount> pebbles)
    : graph_(std::move(graph)), pebbles_(std::move(pebbles)) {
  if (pebbles_.size() != graph_->vertex_count())
    throw PositionError(PositionError::Kind::WrongPebbleCount,
                        "expected " + std::to_string(graph_->vertex_count()) + " pebble triples, got " +
                            std::to_string(pebbles_.size()));
}

Position Position::with_pebbles(std::vector<PebbleCount> pebbles) const {
  return Position(graph_, std::move(pebbles));
}

PebbleCount Position::totals() const {
  PebbleCount sum;
  for (const auto& p : pebbles_) {
    sum.blue += p.blue;
    sum.red += p.red;
    sum.green += p.green;
  }
  return sum;
}

bool Position::green_only() const {
  return std::all_of(pebbles_.begin(), pebbles_.end(),
                     [](const PebbleCount& p) { return p.blue == 0 && p.red == 0; });
}

std::string to_string(Family f) {
  switch (f) {
    case Family::OutStar: return "out_star";
    case Family::InStar: return "in_star";
    case Family::Path: return "path";
    case Family::TransitiveTriple: return "transitive_triple";
    case Family::TransitiveTournament: return "transitive_tournament";
    case Family::SingleArc: return "single_arc";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::OutStar, Family::InStar, Family::Path, Family::TransitiveTriple,
                   Family::TransitiveTournament, Family::SingleArc})
    if (to_string(f) == name) return f;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

std::size_t family_vertex_count(Family f, std::size_t n) {
  switch (f) {
    case Family::OutStar:
    case Family::InStar: return n + 1;
    case Family::Path:
    case Family::TransitiveTournament: return n;
    case Family::TransitiveTriple: return 3;
    case Family::SingleArc: return 2;
  }
  return 0;
}

Position build_family(Family f, std::size_t n, std::vector<PebbleCount> pebbles) {
  const bool sized = f != Family::SingleArc && f != Family::TransitiveTriple;
  if (sized && n == 0) throw std::invalid_argument(to_string(f) + ": n must be at least 1");
  std::size_t count = family_vertex_count(f, n);
  if (pebbles.size() != count)
    throw PositionError(PositionError::Kind::WrongPebbleCount,
                        to_string(f) + " needs " + std::to_string(count) + " pebble triples, got " +
                            std::to_string(pebbles.size()));
  std::vector<Arc> arcs;
  auto v = [](std::size_t i) { return static_cast<Vertex>(i); };
  switch (f) {
    case Family::OutStar:
      for (std::size_t i = 1; i <= n; ++i) arcs.push_back({0, v(i)});
      break;
    case Family::InStar:
      for (std::size_t i = 1; i <= n; ++i) arcs.push_back({v(i), 0});
      break;
    case Family::Path:
      for (std::size_t i = 0; i + 1 < n; ++i) arcs.push_back({v(i), v(i + 1)});
      break;
    case Family::TransitiveTriple:
    case Family::TransitiveTournament:
      for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) arcs.push_back({v(i), v(j)});
      break;
    case Family::SingleArc:
      arcs.push_back({0, 1});
      break;
  }
  return Position(count, std::move(arcs), std::move(pebbles));
}

std::vector<std::pair<Position, std::vector<Vertex>>> components_with_labels(const Position& p) {
  const std::size_t n = p.vertex_count();
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Arc& a : p.arcs()) {
    Vertex ra = find(a.from), rb = find(a.to);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  std::vector<std::pair<Position, std::vector<Vertex>>> result;
  if (n == 0) return result;
  std::vector<std::vector<Vertex>> members;
  std::vector<std::int64_t> slot(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    Vertex r = find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::int64_t>(members.size());
      members.emplace_back();
    }
    members[static_cast<std::size_t>(slot[r])].push_back(v);
  }
  if (members.size() == 1) {
    std::vector<Vertex> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    result.emplace_back(p, std::move(labels));
    return result;
  }
  std::vector<Vertex> local(n);
  for (const auto& group : members)
    for (std::size_t i = 0; i < group.size(); ++i) local[group[i]] = static_cast<Vertex>(i);
  std::vector<std::vector<Arc>> arcs(members.size());
  for (const Arc& a : p.arcs())
    arcs[static_cast<std::size_t>(slot[find(a.from)])].push_back({local[a.from], local[a.to]});
  for (std::size_t c = 0; c < members.size(); ++c) {
    std::vector<PebbleCount> pebbles;
    for (Vertex v : members[c]) pebbles.push_back(p.at(v));
    result.emplace_back(Position(members[c].size(), std::move(arcs[c]), std::move(pebbles)), members[c]);
  }
  return result;
}

std::vector<Position> components(const Position& p) {
  std::vector<Position> out;
  for (auto& [component, labels] : components_with_labels(p)) out.push_back(std::move(component));
  return out;
}

Position disjoint_union(const Position& a, const Position& b) {
  const auto shift = static_cast<Vertex>(a.vertex_count());
  std::vector<Arc> arcs(a.arcs().begin(), a.arcs().end());
  for (const Arc& arc : b.arcs()) arcs.push_back({arc.from + shift, arc.to + shift});
  std::vector<PebbleCount> pebbles(a.pebbles().begin(), a.pebbles().end());
  pebbles.insert(pebbles.end(), b.pebbles().begin(), b.pebbles().end());
  return Position(a.vertex_count() + b.vertex_count(), std::move(arcs), std::move(pebbles));
}

RankPotential rank_potential(const Position& p) {
  RankPotential r;
  for (Vertex v = 0; v < p.vertex_count(); ++v) {
    r.total_pebbles += p.at(v).total();
    r.weighted_rank += std::uint64_t{p.graph().rank(v)} * p.at(v).total();
  }
  return r;
}

namespace {

std::string write_position(const Position& p, bool pretty) {
  std::ostringstream out;
  const char* nl = pretty ? "\n" : "";
  const char* indent = pretty ? "    " : "";
  const char* sp = pretty ? " " : "";
  out << "{" << nl << (pretty ? "  " : "") << "\"vertices\":" << sp << "[";
  for (Vertex v = 0; v < p.vertex_count(); ++v) {
    const auto& c = p.at(v);
    out << (v ? "," : "") << nl << indent << "{\"id\":" << sp << v << "," << sp << "\"pebbles\":" << sp << "["
        << c.blue << "," << sp << c.red << "," << sp << c.green << "]}";
  }
  if (pretty && p.vertex_count() > 0) out << nl << "  ";
  out << "]," << nl << (pretty ? "  " : "") << "\"arcs\":" << sp << "[";
  bool first = true;
  for (const Arc& a : p.arcs()) {
    out << (first ? "" : ",") << nl << indent << "[" << a.from << "," << sp << a.to << "]";
    first = false;
  }
  if (pretty && !p.arcs().empty()) out << nl << "  ";
  out << "]" << nl << "}" << nl;
  return out.str();
}

[[noreturn]] void malformed(const std::string& what) {
  throw PositionError(PositionError::Kind::Malformed, "malformed position file: " + what);
}

std::uint32_t read_count(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  auto value = j.get<std::int64_t>();
  if (value < 0)
    throw PositionError(PositionError::Kind::NegativeCount,
                        std::string(what) + " must be non-negative, got " + std::to_string(value));
  if (value > 0xffffffffLL) malformed(std::string(what) + " too large");
  return static_cast<std::uint32_t>(value);
}

}  // namespace

std::string serialize(const Position& p) { return write_position(p, true); }

std::string serialize_compact(const Position& p) {
  std::string s = write_position(p, false);
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

Position parse_position(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(e.what());
  }
  if (!doc.is_object()) malformed("top level must be an object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) malformed("missing \"vertices\" array");
  if (doc.contains("arcs") && !doc["arcs"].is_array()) malformed("\"arcs\" must be an array");

  const auto& vertices = doc["vertices"];
  const std::size_t n = vertices.size();
  std::vector<PebbleCount> pebbles(n);
  std::vector<bool> seen(n, false);
  for (const auto& entry : vertices) {
    if (!entry.is_object() || !entry.contains("id") || !entry.contains("pebbles"))
      malformed("each vertex needs \"id\" and \"pebbles\"");
    if (!entry["id"].is_number_integer()) malformed("vertex id must be an integer");
    auto id = entry["id"].get<std::int64_t>();
    if (id < 0 || static_cast<std::size_t>(id) >= n || seen[static_cast<std::size_t>(id)])
      throw PositionError(PositionError::Kind::BadVertexId,
                          "vertex ids must be exactly 0.." + std::to_string(n == 0 ? 0 : n - 1) + ", got " +
                              std::to_string(id));
    seen[static_cast<std::size_t>(id)] = true;
    const auto& triple = entry["pebbles"];
    if (!triple.is_array() || triple.size() != 3) malformed("\"pebbles\" must be [blue, red, green]");
    pebbles[static_cast<std::size_t>(id)] = {read_count(triple[0], "blue count"), read_count(triple[1], "red count"),
                                             read_count(triple[2], "green count")};
  }

  std::vector<Arc> arcs;
  if (doc.contains("arcs")) {
    for (const auto& pair : doc["arcs"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer())
        malformed("each arc must be a [from, to] pair of integers");
      auto from = pair[0].get<std::int64_t>();
      auto to = pair[1].get<std::int64_t>();
      if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= n || static_cast<std::size_t>(to) >= n)
        throw PositionError(PositionError::Kind::UnknownVertex,
                            "arc [" + std::to_string(from) + ", " + std::to_string(to) +
                                "] references an unknown vertex");
      arcs.push_back({static_cast<Vertex>(from), static_cast<Vertex>(to)});
    }
  }
  return Position(n, std::move(arcs), std::move(pebbles));
}

Position swap_colors(const Position& p) {
  std::vector<PebbleCount> swapped(p.pebbles().begin(), p.pebbles().end());
  for (auto& c : swapped) std::swap(c.blue, c.red);
  return p.with_pebbles(std::move(swapped));
}

std::string describe_pebbles(const Position& p) {
  std::string out = "[";
  for (Vertex v = 0; v < p.vertex_count(); ++v) {
    const auto& c = p.at(v);
    if (v) out += ",";
    out += "(" + std::to_string(c.blue) + "," + std::to_string(c.red) + "," + std::to_string(c.green) + ")";
  }
  return out + "]";
}

}  // namespace pebbles
