#include "pebbles/values.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "pebbles/concurrent_map.hpp"

namespace pebbles {

namespace {

struct Node {
  std::vector<Game> left;
  std::vector<Game> right;
  unsigned birthday = 0;
  std::optional<DyadicRational> number;
  std::optional<unsigned> nimber;
};

struct OptionKey {
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;
  friend bool operator==(const OptionKey&, const OptionKey&) = default;
};

struct OptionKeyHash {
  std::size_t operator()(const OptionKey& k) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ k.left.size();
    for (auto id : k.left) h = (h ^ id) * 0x100000001b3ULL;
    h ^= 0xabcdefULL + k.right.size();
    for (auto id : k.right) h = (h ^ id) * 0x100000001b3ULL;
    return h;
  }
};

std::uint64_t pair_key(Game a, Game b) {
  return (std::uint64_t{a.id()} << 32) | b.id();
}

// Append-only node storage. Chunks never move, so a published id can be read
// without locking; ids are only handed out through an intern shard mutex,
// which orders the node write before any read.
class GameStore {
 public:
  static constexpr std::size_t kChunkBits = 12;
  static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
  static constexpr std::size_t kMaxChunks = std::size_t{1} << 18;
  static constexpr std::size_t kShards = 64;

  GameStore() : chunks_(new std::atomic<Node*>[kMaxChunks]) {
    for (std::size_t i = 0; i < kMaxChunks; ++i) chunks_[i].store(nullptr, std::memory_order_relaxed);
    Game g = intern({}, {});
    (void)g;  // id 0 is zero
  }

  ~GameStore() {
    for (std::size_t i = 0; i < kMaxChunks; ++i) delete[] chunks_[i].load();
  }

  const Node& node(std::uint32_t id) const {
    Node* chunk = chunks_[id >> kChunkBits].load(std::memory_order_acquire);
    return chunk[id & (kChunkSize - 1)];
  }

  // left/right must be canonical, sorted by id and duplicate-free.
  Game intern(std::vector<Game> left, std::vector<Game> right) {
    OptionKey key;
    key.left.reserve(left.size());
    key.right.reserve(right.size());
    for (Game g : left) key.left.push_back(g.id());
    for (Game g : right) key.right.push_back(g.id());
    std::size_t h = OptionKeyHash{}(key);
    Shard& shard = shards_[(h >> 7) % kShards];
    std::lock_guard lock(shard.mutex);
    if (auto it = shard.map.find(key); it != shard.map.end()) return Game::from_id(it->second);

    std::uint32_t id = next_id_.fetch_add(1);
    Node& slot = slot_for(id);
    slot.birthday = 0;
    for (Game g : left) slot.birthday = std::max(slot.birthday, node(g.id()).birthday + 1);
    for (Game g : right) slot.birthday = std::max(slot.birthday, node(g.id()).birthday + 1);
    slot.number = number_value(left, right);
    slot.nimber = nimber_value(left, right);
    slot.left = std::move(left);
    slot.right = std::move(right);
    shard.map.emplace(std::move(key), id);
    return Game::from_id(id);
  }

  std::size_t size() const { return next_id_.load(); }

  ConcurrentMap<std::uint64_t, bool> leq_cache;
  ConcurrentMap<std::uint64_t, std::uint32_t> add_cache;
  ConcurrentMap<std::uint32_t, std::uint32_t> neg_cache;
  ConcurrentMap<std::uint32_t, std::string> render_cache;

 private:
  struct Shard {
    std::mutex mutex;
    std::unordered_map<OptionKey, std::uint32_t, OptionKeyHash> map;
  };

  Node& slot_for(std::uint32_t id) {
    std::size_t c = id >> kChunkBits;
    if (c >= kMaxChunks) throw std::length_error("game store exhausted");
    Node* chunk = chunks_[c].load(std::memory_order_acquire);
    if (chunk == nullptr) {
      Node* fresh = new Node[kChunkSize];
      if (chunks_[c].compare_exchange_strong(chunk, fresh, std::memory_order_acq_rel)) {
        chunk = fresh;
      } else {
        delete[] fresh;
      }
    }
    return chunk[id & (kChunkSize - 1)];
  }

  std::optional<DyadicRational> number_value(const std::vector<Game>& left,
                                             const std::vector<Game>& right) const {
    if (left.size() > 1 || right.size() > 1) return std::nullopt;
    std::optional<DyadicRational> lo, hi;
    if (!left.empty()) {
      lo = node(left[0].id()).number;
      if (!lo) return std::nullopt;
    }
    if (!right.empty()) {
      hi = node(right[0].id()).number;
      if (!hi) return std::nullopt;
    }
    if (lo && hi) {
      if (!(*lo < *hi)) return std::nullopt;
      return DyadicRational::simplest_between(*lo, *hi);
    }
    if (lo) return DyadicRational::simplest_above(*lo);
    if (hi) return DyadicRational::simplest_below(*hi);
    return DyadicRational{};
  }

  std::optional<unsigned> nimber_value(const std::vector<Game>& left,
                                       const std::vector<Game>& right) const {
    if (left != right) return std::nullopt;
    std::vector<unsigned> heaps;
    for (Game g : left) {
      auto k = node(g.id()).nimber;
      if (!k) return std::nullopt;
      heaps.push_back(*k);
    }
    std::sort(heaps.begin(), heaps.end());
    for (unsigned i = 0; i < heaps.size(); ++i)
      if (heaps[i] != i) return std::nullopt;
    return static_cast<unsigned>(heaps.size());
  }

  std::unique_ptr<std::atomic<Node*>[]> chunks_;
  std::atomic<std::uint32_t> next_id_{0};
  std::array<Shard, kShards> shards_;
};

GameStore& store() {
  static GameStore instance;
  return instance;
}

const Node& node_of(Game g) { return store().node(g.id()); }

void sort_unique(std::vector<Game>& v) {
  std::sort(v.begin(), v.end(), [](Game a, Game b) { return a.id() < b.id(); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool leq_view_game(std::span<const Game> left, std::span<const Game> right, Game h);

// h <= {left | right}
bool leq_game_view(Game h, std::span<const Game> left, std::span<const Game> right) {
  for (Game hl : node_of(h).left)
    if (leq_view_game(left, right, hl)) return false;
  for (Game gr : right)
    if (leq(gr, h)) return false;
  return true;
}

// {left | right} <= h
bool leq_view_game(std::span<const Game> left, std::span<const Game> right, Game h) {
  for (Game gl : left)
    if (leq(h, gl)) return false;
  for (Game hr : node_of(h).right)
    if (leq_game_view(hr, left, right)) return false;
  return true;
}

// Keep only options not dominated by another. `better(a, b)` means a <= b for
// Left (keep the maxima) and b <= a for Right (keep the minima).
template <typename Better>
void remove_dominated(std::vector<Game>& options, Better dominated_by) {
  std::vector<Game> kept;
  kept.reserve(options.size());
  for (std::size_t i = 0; i < options.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < options.size() && !dominated; ++j) {
      if (i != j && dominated_by(options[i], options[j])) dominated = true;
    }
    if (!dominated) kept.push_back(options[i]);
  }
  options = std::move(kept);
}

Game number_from_bounds(const std::vector<Game>& left, const std::vector<Game>& right) {
  std::optional<DyadicRational> lo, hi;
  if (!left.empty()) lo = node_of(left[0]).number;
  if (!right.empty()) hi = node_of(right[0]).number;
  if (lo && hi) return number(DyadicRational::simplest_between(*lo, *hi));
  if (lo) return number(DyadicRational::simplest_above(*lo));
  if (hi) return number(DyadicRational::simplest_below(*hi));
  return zero();
}

}  // namespace

std::span<const Game> Game::left_options() const { return node_of(*this).left; }
std::span<const Game> Game::right_options() const { return node_of(*this).right; }
unsigned Game::birthday() const { return node_of(*this).birthday; }

std::string to_string(ValueClass c) {
  switch (c) {
    case ValueClass::Number: return "Number";
    case ValueClass::Nimber: return "Nimber";
    case ValueClass::Switch: return "Switch";
    case ValueClass::UpStarFamily: return "UpStarFamily";
    case ValueClass::Other: return "Other";
  }
  return "Other";
}

Game make_game(std::vector<Game> left, std::vector<Game> right) {
  for (;;) {
    sort_unique(left);
    sort_unique(right);
    remove_dominated(left, [](Game a, Game b) { return leq(a, b); });
    remove_dominated(right, [](Game a, Game b) { return leq(b, a); });

    if (left.size() <= 1 && right.size() <= 1) {
      bool numeric = std::all_of(left.begin(), left.end(), [](Game g) { return node_of(g).number.has_value(); }) &&
                     std::all_of(right.begin(), right.end(), [](Game g) { return node_of(g).number.has_value(); });
      if (numeric && (left.empty() || right.empty() || *node_of(left[0]).number < *node_of(right[0]).number))
        return number_from_bounds(left, right);
    }

    bool changed = false;
    for (std::size_t i = 0; i < left.size() && !changed; ++i) {
      for (Game glr : node_of(left[i]).right) {
        if (leq_game_view(glr, left, right)) {
          const auto& replacement = node_of(glr).left;
          left.erase(left.begin() + static_cast<std::ptrdiff_t>(i));
          left.insert(left.end(), replacement.begin(), replacement.end());
          changed = true;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < right.size() && !changed; ++i) {
      for (Game grl : node_of(right[i]).left) {
        if (leq_view_game(left, right, grl)) {
          const auto& replacement = node_of(grl).right;
          right.erase(right.begin() + static_cast<std::ptrdiff_t>(i));
          right.insert(right.end(), replacement.begin(), replacement.end());
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
  }
  return store().intern(std::move(left), std::move(right));
}

Game zero() { return Game{}; }

Game star() { return nimber(1); }

Game up() { return make_game({zero()}, {star()}); }

Game down() { return negate(up()); }

Game integer(std::int64_t n) {
  Game g = zero();
  for (std::int64_t i = 0; i < n; ++i) g = store().intern({g}, {});
  for (std::int64_t i = 0; i > n; --i) g = store().intern({}, {g});
  return g;
}

Game number(const DyadicRational& d) {
  if (d.is_integer()) return integer(d.numerator());
  DyadicRational step(1, d.exponent());
  return store().intern({number(d - step)}, {number(d + step)});
}

Game nimber(unsigned n) {
  std::vector<Game> options;
  options.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    options.push_back(store().intern(options, options));
  }
  return store().intern(options, options);
}

Game up_multiple(int n) {
  if (n < 0) return negate(up_multiple(-n));
  // {0 | (n-1).^*}, built by repeated addition to stay within one code path.
  Game result = zero();
  Game u = up();
  for (int i = 0; i < n; ++i) result = add(result, u);
  return result;
}

bool leq(Game g, Game h) {
  if (g == h) return true;
  const Node& gn = node_of(g);
  const Node& hn = node_of(h);
  if (gn.number && hn.number) return *gn.number <= *hn.number;

  auto& cache = store().leq_cache;
  std::uint64_t key = pair_key(g, h);
  if (auto hit = cache.find(key)) return *hit;

  bool result = true;
  for (Game gl : gn.left) {
    if (leq(h, gl)) {
      result = false;
      break;
    }
  }
  if (result) {
    for (Game hr : hn.right) {
      if (leq(hr, g)) {
        result = false;
        break;
      }
    }
  }
  cache.insert(key, result);
  return result;
}

Game add(Game g, Game h) {
  if (g == zero()) return h;
  if (h == zero()) return g;
  const Node& gn = node_of(g);
  const Node& hn = node_of(h);
  if (gn.number && hn.number) return number(*gn.number + *hn.number);
  if (g.id() > h.id()) return add(h, g);

  auto& cache = store().add_cache;
  std::uint64_t key = pair_key(g, h);
  if (auto hit = cache.find(key)) return Game::from_id(*hit);

  std::vector<Game> left, right;
  // A number summand never needs to be moved in when the other is not a number.
  if (!gn.number) {
    for (Game gl : gn.left) left.push_back(add(gl, h));
    for (Game gr : gn.right) right.push_back(add(gr, h));
  }
  if (!hn.number) {
    for (Game hl : hn.left) left.push_back(add(g, hl));
    for (Game hr : hn.right) right.push_back(add(g, hr));
  }
  Game result = make_game(std::move(left), std::move(right));
  cache.insert(key, result.id());
  return result;
}

Game negate(Game g) {
  if (g == zero()) return g;
  auto& cache = store().neg_cache;
  if (auto hit = cache.find(g.id())) return Game::from_id(*hit);
  const Node& gn = node_of(g);
  std::vector<Game> left, right;
  for (Game gr : gn.right) left.push_back(negate(gr));
  for (Game gl : gn.left) right.push_back(negate(gl));
  sort_unique(left);
  sort_unique(right);
  Game result = store().intern(std::move(left), std::move(right));
  cache.insert(g.id(), result.id());
  cache.insert(result.id(), g.id());
  return result;
}

std::optional<DyadicRational> as_number(Game g) { return node_of(g).number; }

std::optional<unsigned> as_nimber(Game g) { return node_of(g).nimber; }

namespace {

constexpr int kMaxUpStarIndex = 64;

class UpTable {
 public:
  // Multiplier n with up_multiple(n) == g, searching |n| <= limit.
  std::optional<int> find(Game g, int limit) {
    std::lock_guard lock(mutex_);
    while (built_ < limit) {
      ++built_;
      Game pos = built_ == 1 ? up() : add(ups_.at(built_ - 1), up());
      ups_[built_] = pos;
      index_[pos.id()] = built_;
      index_[negate(pos).id()] = -built_;
    }
    auto it = index_.find(g.id());
    if (it == index_.end() || std::abs(it->second) > limit) return std::nullopt;
    return it->second;
  }

 private:
  std::mutex mutex_;
  int built_ = 0;
  std::map<int, Game> ups_;
  std::unordered_map<std::uint32_t, int> index_;
};

UpTable& up_table() {
  static UpTable table;
  return table;
}

}  // namespace

std::optional<UpStar> as_up_star(Game g) {
  const Node& gn = node_of(g);
  if (gn.number || gn.nimber) return std::nullopt;
  // Every n.^ + *k is infinitesimal.
  const Game eps = number(DyadicRational(1, 8));
  if (!leq(g, eps) || !leq(negate(eps), g)) return std::nullopt;
  // n.^ + *k has birthday at least max(|n|, k) - 1, which bounds the search.
  int limit = std::min<int>(kMaxUpStarIndex, static_cast<int>(gn.birthday) + 2);
  for (int k = 0; k <= limit; ++k) {
    Game shifted = add(g, nimber(static_cast<unsigned>(k)));
    if (auto n = up_table().find(shifted, limit)) return UpStar{*n, static_cast<unsigned>(k)};
  }
  return std::nullopt;
}

ValueClass classify(Game g) {
  const Node& gn = node_of(g);
  if (gn.number) return ValueClass::Number;
  if (gn.nimber) return ValueClass::Nimber;
  if (gn.left.size() == 1 && gn.right.size() == 1) {
    auto a = node_of(gn.left[0]).number;
    auto b = node_of(gn.right[0]).number;
    if (a && b && *a > *b) return ValueClass::Switch;
  }
  if (as_up_star(g)) return ValueClass::UpStarFamily;
  return ValueClass::Other;
}

namespace {

std::string render_nimber(unsigned k) {
  if (k == 0) return "0";
  if (k == 1) return "*";
  return "*" + std::to_string(k);
}

std::string render_uncached(Game g) {
  const Node& gn = node_of(g);
  if (gn.number) return gn.number->to_string();
  if (gn.nimber) return render_nimber(*gn.nimber);
  if (auto us = as_up_star(g)) {
    std::string out;
    int n = std::abs(us->ups);
    if (n != 1) out += std::to_string(n);
    out += us->ups > 0 ? "^" : "v";
    if (us->star > 0) out += render_nimber(us->star);
    return out;
  }
  auto side = [](const std::vector<Game>& options) {
    std::vector<std::string> parts;
    for (Game o : options) parts.push_back(render(o));
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += ",";
      out += parts[i];
    }
    return out;
  };
  return "{" + side(gn.left) + "|" + side(gn.right) + "}";
}

class ValueParser {
 public:
  explicit ValueParser(std::string_view text) : text_(text) {}

  Game parse_all() {
    Game g = parse();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValueParseError("value notation: " + what + " at offset " + std::to_string(pos_) +
                          " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool digit_next() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::int64_t parse_nat() {
    if (!digit_next()) fail("expected digits");
    std::int64_t value = 0;
    while (digit_next()) {
      value = value * 10 + (text_[pos_++] - '0');
      if (value > (std::int64_t{1} << 40)) fail("number too large");
    }
    return value;
  }

  Game parse_star_suffix() {
    // after '*'
    if (digit_next()) return nimber(static_cast<unsigned>(parse_nat()));
    return star();
  }

  Game parse_arrow(std::int64_t multiplier) {
    char arrow = text_[pos_++];
    if (multiplier < 1 || multiplier > kMaxUpStarIndex) fail("up multiplier out of range");
    Game g = up_multiple(arrow == '^' ? static_cast<int>(multiplier) : -static_cast<int>(multiplier));
    if (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      g = add(g, parse_star_suffix());
    }
    return g;
  }

  Game parse() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (c == '{') return parse_braces();
    if (c == '*') {
      ++pos_;
      return parse_star_suffix();
    }
    if (c == '^' || c == 'v') return parse_arrow(1);
    bool negative = false;
    if (c == '-') {
      negative = true;
      ++pos_;
    }
    std::int64_t n = parse_nat();
    if (!negative && pos_ < text_.size() && (text_[pos_] == '^' || text_[pos_] == 'v'))
      return parse_arrow(n);
    if (negative) n = -n;
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      if (text_.substr(pos_, 2) != "2^") fail("expected '2^' after '/'");
      pos_ += 2;
      std::int64_t q = parse_nat();
      if (q > 60) fail("exponent too large");
      return number(DyadicRational(n, static_cast<unsigned>(q)));
    }
    return integer(n);
  }

  std::vector<Game> parse_list(char terminator) {
    std::vector<Game> out;
    if (peek(terminator)) return out;
    for (;;) {
      out.push_back(parse());
      if (peek(',')) {
        ++pos_;
        continue;
      }
      if (peek(terminator)) return out;
      fail(std::string("expected ',' or '") + terminator + "'");
    }
  }

  Game parse_braces() {
    ++pos_;  // '{'
    auto left = parse_list('|');
    ++pos_;  // '|'
    auto right = parse_list('}');
    ++pos_;  // '}'
    return make_game(std::move(left), std::move(right));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string render(Game g) {
  auto& cache = store().render_cache;
  if (auto hit = cache.find(g.id())) return *hit;
  std::string text = render_uncached(g);
  cache.insert(g.id(), text);
  return text;
}

Game parse_value(std::string_view text) { return ValueParser(text).parse_all(); }

std::size_t interned_game_count() { return store().size(); }

}  // namespace pebbles
