#include <algorithm>
#include <atomic>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "pebbles/families.hpp"
#include "pebbles/graphs.hpp"

namespace pebbles::families {

namespace {

struct Check {
  enum class Measure { Value, Grundy, Outcome, ReducedGrundy };

  std::string key;
  Position position;
  Measure measure = Measure::Value;
  Game expected_value;
  unsigned expected_grundy = 0;
  OutcomeClass expected_outcome = OutcomeClass::P;
  std::optional<Position> reduced;
};

Check value_check(std::string key, Position p, Game expected) {
  Check c{std::move(key), std::move(p)};
  c.expected_value = expected;
  return c;
}

Check grundy_check(std::string key, Position p, unsigned expected) {
  Check c{std::move(key), std::move(p), Check::Measure::Grundy};
  c.expected_grundy = expected;
  return c;
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                           static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
}

std::vector<CaseRecord> run_checks(const std::vector<Check>& checks, const Solver& solver) {
  std::vector<CaseRecord> records(checks.size());
  parallel_for(checks.size(), [&](std::size_t i) {
    const Check& c = checks[i];
    CaseRecord& r = records[i];
    r.key = c.key;
    try {
      switch (c.measure) {
        case Check::Measure::Value: {
          r.formula = render(c.expected_value);
          Game got = solver.game_value(c.position);
          r.solver = render(got);
          r.status = got == c.expected_value ? CaseRecord::Status::Match : CaseRecord::Status::Mismatch;
          break;
        }
        case Check::Measure::Grundy: {
          r.formula = render(nimber(c.expected_grundy));
          unsigned got = solver.grundy(c.position);
          r.solver = render(nimber(got));
          r.status = got == c.expected_grundy ? CaseRecord::Status::Match : CaseRecord::Status::Mismatch;
          break;
        }
        case Check::Measure::Outcome: {
          r.formula = std::string(1, to_char(c.expected_outcome));
          OutcomeClass got = solver.outcome(c.position);
          r.solver = std::string(1, to_char(got));
          r.status = got == c.expected_outcome ? CaseRecord::Status::Match : CaseRecord::Status::Mismatch;
          break;
        }
        case Check::Measure::ReducedGrundy: {
          unsigned reduced = solver.grundy(*c.reduced);
          unsigned original = solver.grundy(c.position);
          r.formula = render(nimber(reduced));
          r.solver = render(nimber(original));
          r.status = reduced == original ? CaseRecord::Status::Match : CaseRecord::Status::Mismatch;
          break;
        }
      }
    } catch (const BudgetExhausted&) {
      r.status = CaseRecord::Status::Skipped;
    }
  });
  return records;
}

void tally(VerificationReport& report, const std::vector<Check>& checks, std::vector<CaseRecord> records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    const CaseRecord& r = records[i];
    if (r.status == CaseRecord::Status::Skipped) {
      ++report.skipped;
      continue;
    }
    ++report.cases_checked;
    if (r.status == CaseRecord::Status::Mismatch)
      report.mismatches.push_back({r.key, serialize_compact(checks[i].position), r.formula, r.solver});
  }
  report.cases = std::move(records);
}

std::size_t count_mismatches(const std::vector<CaseRecord>& records) {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const CaseRecord& r) {
    return r.status == CaseRecord::Status::Mismatch;
  }));
}

std::string pair_text(std::uint32_t blue, std::uint32_t red) {
  return "(" + std::to_string(blue) + "," + std::to_string(red) + ")";
}

std::string star_key(const StarConfig& c, int case_number) {
  std::string key = "[" + pair_text(c.center.blue, c.center.red);
  for (const auto& leaf : c.leaves) key += "," + pair_text(leaf.blue, leaf.red);
  return key + "]#" + std::to_string(case_number);
}

std::string heaps_key(std::span<const std::uint32_t> heaps) {
  std::string key = "<";
  for (std::size_t i = 0; i < heaps.size(); ++i) key += (i ? "," : "") + std::to_string(heaps[i]);
  return key + ">";
}

// Blue/red stars with 1..max_leaves leaves.
template <typename Fn>
void for_each_star(const VerifyBounds& bounds, Fn&& fn) {
  for (std::uint32_t n = 1; n <= bounds.max_leaves; ++n) {
    for (const auto& counts : graphs::bounded_compositions(2 * (n + 1), bounds.max_total, bounds.max_per_vertex)) {
      StarConfig c;
      c.center = {counts[0], counts[1], 0};
      for (std::uint32_t i = 1; i <= n; ++i) c.leaves.push_back({counts[2 * i], counts[2 * i + 1], 0});
      fn(c);
    }
  }
}

std::vector<Check> thm1_checks(const VerifyBounds& b, VerificationReport&) {
  std::vector<Check> checks;
  const auto m = static_cast<std::int64_t>(b.max_k);
  for (std::int64_t k = -m; k <= m; ++k)
    checks.push_back(value_check("k=" + std::to_string(k), integer_position(k), integer(k)));
  return checks;
}

std::vector<Check> star_checks(const VerifyBounds& b, VerificationReport& report, bool outward) {
  std::vector<Check> checks;
  for_each_star(b, [&](const StarConfig& c) {
    auto value = outward ? outstar_value(c) : instar_value(c);
    if (!value) {
      ++report.uncovered;
      return;
    }
    checks.push_back(value_check(star_key(c, value->case_number),
                                 outward ? out_star_position(c) : in_star_position(c), value->value));
  });
  return checks;
}

std::vector<Check> p3_checks(const VerifyBounds& b, VerificationReport& report) {
  std::vector<Check> checks;
  for (const auto& v : graphs::bounded_compositions(6, b.max_total, b.max_per_vertex)) {
    P3Config c{v[0], v[1], v[2], v[3], v[4], v[5]};
    auto value = p3_value(c);
    if (!value) {
      ++report.uncovered;
      continue;
    }
    checks.push_back(value_check("[" + pair_text(c.a, c.b) + "," + pair_text(c.c, c.d) + "," + pair_text(c.e, c.f) +
                                     "]#" + std::to_string(value->case_number),
                                 p3_position(c), value->value));
  }
  return checks;
}

std::vector<Check> green_star_checks(const VerifyBounds& b, bool outward) {
  std::vector<Check> checks;
  for (std::uint32_t n = 1; n <= b.max_leaves; ++n) {
    for (const auto& heaps : graphs::bounded_compositions(n + 1, b.max_total, b.max_per_vertex)) {
      std::vector<PebbleCount> pebbles;
      for (auto g : heaps) pebbles.push_back({0, 0, g});
      std::span<const std::uint32_t> leaves(heaps.data() + 1, n);
      unsigned expected =
          green_star_value(outward ? StarOrientation::Out : StarOrientation::In, heaps[0], leaves);
      checks.push_back(grundy_check((outward ? "out" : "in") + heaps_key(heaps),
                                    build_family(outward ? Family::OutStar : Family::InStar, n, std::move(pebbles)),
                                    expected));
    }
  }
  return checks;
}

std::vector<Check> green_path_checks(const VerifyBounds& b) {
  std::vector<Check> checks;
  for (std::uint32_t n = 1; n <= b.max_path_vertices; ++n) {
    for (const auto& heaps : graphs::bounded_compositions(n, b.max_total, b.max_per_vertex)) {
      std::vector<PebbleCount> pebbles;
      for (auto g : heaps) pebbles.push_back({0, 0, g});
      checks.push_back(grundy_check("path" + heaps_key(heaps), build_family(Family::Path, n, std::move(pebbles)),
                                    green_path_value(heaps)));
    }
  }
  return checks;
}

std::string arcs_text(const Digraph& g) {
  std::string out;
  for (const Arc& a : g.arcs()) out += (out.empty() ? "" : " ") + std::to_string(a.from) + ">" + std::to_string(a.to);
  return out;
}

std::vector<Check> reduction_checks(const VerifyBounds& b) {
  std::vector<Check> checks;
  for (std::uint32_t n = 1; n <= b.max_tree_vertices; ++n) {
    for (const Digraph& tree : graphs::oriented_trees(n)) {
      auto graph = std::make_shared<const Digraph>(tree);
      for (const auto& heaps : graphs::bounded_compositions(n, b.max_tree_pebbles, b.max_tree_pebbles)) {
        std::vector<PebbleCount> pebbles;
        for (auto g : heaps) pebbles.push_back({0, 0, g});
        Position t(graph, std::move(pebbles));
        Check c{"tree[" + arcs_text(tree) + "]" + heaps_key(heaps), t, Check::Measure::ReducedGrundy};
        c.reduced = reduce_tree(t);
        checks.push_back(std::move(c));
      }
    }
  }
  return checks;
}

std::vector<Check> triple_checks(const VerifyBounds& b) {
  std::vector<Check> checks;
  const std::uint32_t m = b.max_per_vertex;
  for (std::uint32_t g1 = 0; g1 <= m; ++g1)
    for (std::uint32_t g2 = 0; g2 <= m; ++g2)
      for (std::uint32_t g3 = 0; g3 <= m; ++g3) {
        Check c{"tt" + heaps_key(std::vector<std::uint32_t>{g1, g2, g3}),
                build_family(Family::TransitiveTriple, 3, {{0, 0, g1}, {0, 0, g2}, {0, 0, g3}}),
                Check::Measure::Outcome};
        c.expected_outcome = triple_outcome(g1, g2, g3);
        checks.push_back(std::move(c));
      }
  return checks;
}

Position tournament_position(std::size_t n) {
  std::vector<PebbleCount> pebbles(n);
  pebbles.back().green = 1;
  return build_family(Family::TransitiveTournament, n, std::move(pebbles));
}

std::string reading_note(const std::string& label, const std::vector<CaseRecord>& records) {
  return label + ": " + std::to_string(records.size()) + " cases, " + std::to_string(count_mismatches(records)) +
         " mismatches";
}

// Runs two alternative formula sets, adopts the first that matches the
// solver everywhere (or the one with fewer mismatches), and records both.
void adopt_reading(VerificationReport& report, const Solver& solver, const std::string& first_label,
                   const std::vector<Check>& first, const std::string& second_label,
                   const std::vector<Check>& second) {
  auto first_records = run_checks(first, solver);
  auto second_records = run_checks(second, solver);
  const std::size_t first_bad = count_mismatches(first_records);
  const std::size_t second_bad = count_mismatches(second_records);
  const bool take_first = first_bad == 0 || first_bad <= second_bad;
  report.notes.push_back(reading_note(first_label, first_records));
  report.notes.push_back(reading_note(second_label, second_records));
  report.notes.push_back("adopted: " + (take_first ? first_label : second_label));
  if (take_first) tally(report, first, std::move(first_records));
  else tally(report, second, std::move(second_records));
}

void verify_thm3(VerificationReport& report, const VerifyBounds& b, const Solver& solver) {
  std::vector<Check> blue_leaf, red_leaf;
  std::size_t uncovered_both = 0;
  for (const auto& v : graphs::bounded_compositions(6, b.max_total, b.max_per_vertex)) {
    K12Config c{v[0], v[1], v[2], v[3], v[4], v[5]};
    const std::string base = "[" + pair_text(c.a, c.b) + "," + pair_text(c.c, c.d) + "," + pair_text(c.e, c.f) + "]";
    auto with_blue = k12_value(c, K12Reading::BlueLeaf);
    auto with_red = k12_value(c, K12Reading::RedLeaf);
    if (with_blue)
      blue_leaf.push_back(value_check(base + "#" + std::to_string(with_blue->case_number), k12_position(c), with_blue->value));
    if (with_red)
      red_leaf.push_back(value_check(base + "#" + std::to_string(with_red->case_number), k12_position(c), with_red->value));
    if (!with_blue && !with_red) ++uncovered_both;
  }
  report.uncovered = uncovered_both;
  adopt_reading(report, solver, "case 1 with blue on the occupied leaf", blue_leaf,
                "case 1 with red on the occupied leaf", red_leaf);
}

void verify_tournament(VerificationReport& report, const VerifyBounds& b, const Solver& solver) {
  std::vector<Check> stated, shifted;
  for (std::size_t n = std::max<std::uint32_t>(1, b.min_tournament); n <= b.max_tournament; ++n) {
    stated.push_back(grundy_check("n=" + std::to_string(n), tournament_position(n), tournament_value(n)));
    shifted.push_back(grundy_check("n=" + std::to_string(n), tournament_position(n), static_cast<unsigned>(n - 1)));
  }
  adopt_reading(report, solver, "heap of size n", stated, "heap of size n-1", shifted);
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"thm1",          "thm2",       "thm3",      "thm4",
                                            "thm5",          "green_instar", "green_outstar", "green_path",
                                            "reduction",     "tt_triple",  "tournament"};
  return ids;
}

VerificationReport verify(const std::string& theorem_id, const VerifyBounds& bounds,
                          const SolverOptions& solver_options) {
  const auto& ids = theorem_ids();
  if (std::find(ids.begin(), ids.end(), theorem_id) == ids.end())
    throw UnknownTheorem("unknown theorem id '" + theorem_id + "'");

  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.theorem_id = theorem_id;
  const Solver solver(solver_options);

  if (theorem_id == "thm3") {
    verify_thm3(report, bounds, solver);
  } else if (theorem_id == "tournament") {
    verify_tournament(report, bounds, solver);
  } else {
    std::vector<Check> checks;
    if (theorem_id == "thm1") checks = thm1_checks(bounds, report);
    else if (theorem_id == "thm2") checks = star_checks(bounds, report, true);
    else if (theorem_id == "thm4") checks = star_checks(bounds, report, false);
    else if (theorem_id == "thm5") checks = p3_checks(bounds, report);
    else if (theorem_id == "green_instar") checks = green_star_checks(bounds, false);
    else if (theorem_id == "green_outstar") checks = green_star_checks(bounds, true);
    else if (theorem_id == "green_path") checks = green_path_checks(bounds);
    else if (theorem_id == "reduction") checks = reduction_checks(bounds);
    else if (theorem_id == "tt_triple") checks = triple_checks(bounds);
    auto records = run_checks(checks, solver);
    tally(report, checks, std::move(records));
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

std::string format_table(std::span<const VerificationReport> reports) {
  std::ostringstream out;
  out << std::left << std::setw(15) << "theorem" << std::right << std::setw(9) << "cases" << std::setw(9)
      << "skipped" << std::setw(12) << "mismatches" << std::setw(11) << "uncovered" << std::setw(11) << "seconds"
      << "  result\n";
  for (const auto& r : reports) {
    out << std::left << std::setw(15) << r.theorem_id << std::right << std::setw(9) << r.cases_checked
        << std::setw(9) << r.skipped << std::setw(12) << r.mismatches.size() << std::setw(11) << r.uncovered
        << std::setw(11) << std::fixed << std::setprecision(3) << r.elapsed.count() << "  "
        << (r.passed() ? "PASS" : "FAIL") << "\n";
  }
  for (const auto& r : reports) {
    for (const auto& note : r.notes) out << r.theorem_id << ": " << note << "\n";
    for (const auto& m : r.mismatches)
      out << r.theorem_id << ": mismatch " << m.case_key << " formula " << m.formula << " solver " << m.solver
          << " position " << m.position << "\n";
  }
  return out.str();
}

std::string format_lines(const VerificationReport& report) {
  std::ostringstream out;
  for (const auto& c : report.cases) {
    const char* status = c.status == CaseRecord::Status::Match      ? "match"
                         : c.status == CaseRecord::Status::Mismatch ? "mismatch"
                                                                    : "skipped";
    out << report.theorem_id << '\t' << c.key << '\t' << c.formula << '\t' << c.solver << '\t' << status << '\n';
  }
  return out.str();
}

}  // namespace pebbles::families
