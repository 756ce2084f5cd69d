#include "pebbles/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "pebbles/families.hpp"
#include "pebbles/graphs.hpp"
#include "pebbles/position.hpp"
#include "pebbles/rules.hpp"
#include "pebbles/solver.hpp"
#include "pebbles/values.hpp"

namespace pebbles::cli {
namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Position load(const std::string& path) { return parse_position(read_file(path)); }

void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty() || output == "-") {
    out << text;
    return;
  }
  std::ofstream f(output, std::ios::binary);
  if (!f) throw IoError("cannot write '" + output + "'");
  f << text;
}

std::uint32_t parse_count(std::string_view s, const std::string& what) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw UsageError("bad " + what + " '" + std::string(s) + "'");
  return v;
}

// "b,r,g" per vertex.
PebbleCount parse_triple(const std::string& s) {
  std::vector<std::uint32_t> parts;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    parts.push_back(parse_count(std::string_view(s).substr(start, comma - start), "pebble count"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3) throw UsageError("pebbles are given as blue,red,green; got '" + s + "'");
  return {parts[0], parts[1], parts[2]};
}

families::VerifyBounds parse_bounds(const std::string& spec) {
  families::VerifyBounds b;
  const std::map<std::string, std::uint32_t*> fields{
      {"max_k", &b.max_k},
      {"max_leaves", &b.max_leaves},
      {"max_per_vertex", &b.max_per_vertex},
      {"max_total", &b.max_total},
      {"max_path_vertices", &b.max_path_vertices},
      {"min_tournament", &b.min_tournament},
      {"max_tournament", &b.max_tournament},
      {"max_tree_vertices", &b.max_tree_vertices},
      {"max_tree_pebbles", &b.max_tree_pebbles},
  };
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("bound '" + item + "' is not key=value");
    auto it = fields.find(item.substr(0, eq));
    if (it == fields.end()) throw UsageError("unknown bound '" + item.substr(0, eq) + "'");
    *it->second = parse_count(std::string_view(item).substr(eq + 1), "bound");
  }
  return b;
}

Player parse_player(const std::string& s) {
  if (s == "L" || s == "l" || s == "left") return Player::Left;
  if (s == "R" || s == "r" || s == "right") return Player::Right;
  throw UsageError("player must be L or R");
}

struct SearchArgs {
  std::size_t max_vertices = 3;
  std::uint32_t max_pebbles = 6;
  std::string colors = "brg";
  std::string target;
  bool report_values = false;
};

int search(const SearchArgs& a, const SolverOptions& opts, std::ostream& out, std::ostream& err) {
  if (a.max_vertices == 0 || a.max_vertices > 4)
    throw UsageError("--max-vertices must be between 1 and 4");
  const bool use_b = a.colors.find('b') != std::string::npos;
  const bool use_r = a.colors.find('r') != std::string::npos;
  const bool use_g = a.colors.find('g') != std::string::npos;
  if (a.colors.find_first_not_of("brg") != std::string::npos || !(use_b || use_r || use_g))
    throw UsageError("--colors takes a subset of 'brg'");
  std::optional<Game> target;
  if (!a.target.empty()) target = parse_value(a.target);

  const Solver solver(opts);
  struct Entry {
    std::size_t count = 0;
    std::string example;
  };
  std::map<std::string, Entry> census;
  std::size_t positions = 0, exhausted = 0;
  const std::size_t per_vertex = std::size_t(use_b) + use_r + use_g;

  for (std::size_t n = 1; n <= a.max_vertices; ++n) {
    for (const auto& g : graphs::dags_up_to_isomorphism(n)) {
      auto graph = std::make_shared<const Digraph>(g);
      for (const auto& counts : graphs::bounded_compositions(n * per_vertex, a.max_pebbles, a.max_pebbles)) {
        std::vector<PebbleCount> pebbles(n);
        std::size_t i = 0;
        for (auto& p : pebbles) {
          if (use_b) p.blue = counts[i++];
          if (use_r) p.red = counts[i++];
          if (use_g) p.green = counts[i++];
        }
        Position pos(graph, std::move(pebbles));
        ++positions;
        Game v;
        try {
          v = solver.game_value(pos);
        } catch (const BudgetExhausted&) {
          ++exhausted;
          continue;
        }
        if (target) {
          if (v == *target) out << serialize_compact(pos) << "\n";
          continue;
        }
        auto& e = census[render(v)];
        if (e.count++ == 0) e.example = serialize_compact(pos);
      }
    }
  }

  if (a.report_values) {
    std::vector<std::pair<std::string, const Entry*>> rows;
    for (const auto& [k, e] : census) rows.emplace_back(k, &e);
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& x, const auto& y) { return x.second->count > y.second->count; });
    out << "value\tcount\texample\n";
    for (const auto& [k, e] : rows) out << k << '\t' << e->count << '\t' << e->example << '\n';
    std::vector<std::string> fractions;
    for (const auto& [k, e] : census) {
      auto g = parse_value(k);
      auto d = as_number(g);
      if (d && d->exponent() > 0) fractions.push_back(k);
    }
    out << "positions " << positions << ", distinct values " << census.size() << ", non-integer numbers "
        << fractions.size();
    for (const auto& f : fractions) out << ' ' << f;
    out << '\n';
  }
  if (exhausted) {
    err << exhausted << " positions exceeded the node budget\n";
    return kBudgetExhausted;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blocking Pebbles game values", "pebbles"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::uint64_t budget = SolverOptions{}.node_budget;
  app.add_option("--budget", budget, "Node budget per solver query")->capture_default_str();

  std::string file, player_text, output, family_name, theorem, bounds_text;
  std::size_t family_n = 0;
  std::vector<std::string> pebble_args;
  bool tsv = false;
  SearchArgs sa;

  auto* eval = app.add_subcommand("eval", "Print the canonical value of a position");
  eval->add_option("file", file, "Position file")->required();

  auto* moves = app.add_subcommand("moves", "List the legal moves of one player");
  moves->add_option("file", file, "Position file")->required();
  moves->add_option("--player,-p", player_text, "L or R")->required();

  auto* outcome = app.add_subcommand("outcome", "Print the outcome class L, R, P or N");
  outcome->add_option("file", file, "Position file")->required();

  auto* grundy = app.add_subcommand("grundy", "Print the Grundy value of a green-only position");
  grundy->add_option("file", file, "Position file")->required();

  auto* gen = app.add_subcommand("gen", "Write a position on a standard digraph");
  gen->add_option("family", family_name,
                  "out_star, in_star, path, transitive_triple, transitive_tournament or single_arc")
      ->required();
  gen->add_option("n", family_n, "Leaves for stars, vertices for paths and tournaments");
  gen->add_option("--pebbles", pebble_args, "One blue,red,green triple per vertex, from vertex 0");
  gen->add_option("--output,-o", output, "Destination file (default stdout)");

  auto* reduce = app.add_subcommand("reduce", "Write the reduced digraph of a green oriented tree");
  reduce->add_option("file", file, "Position file")->required();
  reduce->add_option("--output,-o", output, "Destination file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Check a closed form against the solver");
  verify->add_option("theorem", theorem, "Theorem id, or 'all'")->required();
  verify->add_option("--bounds", bounds_text, "Comma separated key=value bounds");
  verify->add_flag("--tsv", tsv, "Print one tab separated line per case");

  auto* search_cmd = app.add_subcommand("search", "Enumerate small positions by value");
  search_cmd->add_option("--max-vertices", sa.max_vertices, "Largest digraph")->capture_default_str();
  search_cmd->add_option("--max-pebbles", sa.max_pebbles, "Largest total pebble count")->capture_default_str();
  search_cmd->add_option("--colors", sa.colors, "Pebble colors to use, subset of brg")->capture_default_str();
  auto* target_opt = search_cmd->add_option("--target", sa.target, "Print positions with this value");
  auto* report_opt = search_cmd->add_flag("--report-values", sa.report_values, "Print the value census");
  target_opt->excludes(report_opt);
  report_opt->excludes(target_opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }
  if (search_cmd->parsed() && sa.target.empty() && !sa.report_values) {
    err << "search needs --target or --report-values\n";
    return kUsageError;
  }

  SolverOptions opts;
  opts.node_budget = budget;

  try {
    if (eval->parsed()) {
      out << render(Solver(opts).game_value(load(file))) << "\n";
    } else if (moves->parsed()) {
      const Player player = parse_player(player_text);
      for (const auto& m : legal_moves(load(file), player)) out << render(m) << "\n";
    } else if (outcome->parsed()) {
      out << to_char(Solver(opts).outcome(load(file))) << "\n";
    } else if (grundy->parsed()) {
      out << Solver(opts).grundy(load(file)) << "\n";
    } else if (gen->parsed()) {
      Family f;
      try {
        f = parse_family(family_name);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      std::vector<PebbleCount> pebbles;
      for (const auto& s : pebble_args) pebbles.push_back(parse_triple(s));
      const std::size_t vertices = family_vertex_count(f, family_n);
      if (pebbles.size() > vertices)
        throw UsageError("family has " + std::to_string(vertices) + " vertices but " +
                         std::to_string(pebbles.size()) + " pebble triples were given");
      pebbles.resize(vertices);
      emit(serialize(build_family(f, family_n, std::move(pebbles))), output, out);
    } else if (reduce->parsed()) {
      emit(serialize(families::reduce_tree(load(file))), output, out);
    } else if (verify->parsed()) {
      const auto bounds = parse_bounds(bounds_text);
      std::vector<std::string> ids;
      if (theorem == "all") ids = families::theorem_ids();
      else ids.push_back(theorem);
      std::vector<families::VerificationReport> reports;
      for (const auto& id : ids) {
        try {
          reports.push_back(families::verify(id, bounds, opts));
        } catch (const families::UnknownTheorem& e) {
          throw UsageError(e.what());
        }
      }
      if (tsv)
        for (const auto& r : reports) out << families::format_lines(r);
      else
        out << families::format_table(reports);
      bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
      return ok ? kOk : kMismatch;
    } else if (search_cmd->parsed()) {
      return search(sa, opts, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ValueParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const BudgetExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetExhausted;
  } catch (const std::exception& e) {
    // Position, rules, impartiality, reduction and I/O failures.
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kOk;
}

}  // namespace pebbles::cli
