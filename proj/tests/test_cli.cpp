#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "pebbles/cli.hpp"
#include "pebbles/position.hpp"
#include "pebbles/solver.hpp"

namespace fs = std::filesystem;
using pebbles::cli::run;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pebbles_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("gen then eval") {
  TempDir dir;
  const auto down = dir.file("down.json");
  auto g = call({"gen", "out_star", "2", "--pebbles", "0,0,0", "1,0,0", "0,1,1", "-o", down});
  REQUIRE(g.status == 0);
  CHECK(g.out.empty());
  auto e = call({"eval", down});
  CHECK(e.status == 0);
  CHECK(e.out == "v\n");
  CHECK(call({"outcome", down}).out == "R\n");

  // stdout and file output agree
  auto printed = call({"gen", "out_star", "2", "--pebbles", "0,0,0", "1,0,0", "0,1,1"});
  std::ifstream in(down);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(printed.out == text.str());
}

TEST_CASE("grundy and moves") {
  TempDir dir;
  const auto path = dir.file("path.json");
  REQUIRE(call({"gen", "path", "4", "--pebbles", "0,0,1", "0,0,2", "0,0,3", "0,0,4", "-o", path}).status == 0);
  auto r = call({"grundy", path});
  CHECK(r.status == 0);
  CHECK(r.out == "6\n");
  CHECK(call({"eval", path}).out == "*6\n");

  const auto arc = dir.file("arc.json");
  REQUIRE(call({"gen", "single_arc", "--pebbles", "2,1,0", "-o", arc}).status == 0);
  auto m = call({"moves", arc, "--player", "L"});
  CHECK(m.status == 0);
  CHECK(m.out == "L pay2 0->1 [b=2 -> place b]\n");
  auto right = call({"moves", arc, "-p", "R"});
  CHECK(right.status == 0);
  CHECK(right.out.empty());
  CHECK(call({"eval", arc}).out == "1\n");
  auto not_green = call({"grundy", arc});
  CHECK(not_green.status == 1);
  CHECK_FALSE(not_green.err.empty());
}

TEST_CASE("reduce writes a position file") {
  TempDir dir;
  const auto tree = dir.file("tree.json");
  REQUIRE(call({"gen", "in_star", "2", "--pebbles", "0,0,3", "0,0,1", "0,0,1", "-o", tree}).status == 0);
  auto r = call({"reduce", tree});
  REQUIRE(r.status == 0);
  auto d = pebbles::parse_position(r.out);
  CHECK(d.vertex_count() == 2);
  CHECK(d.at(1).green == 3);
  const auto blue = dir.file("blue.json");
  REQUIRE(call({"gen", "path", "2", "--pebbles", "1,0,0", "-o", blue}).status == 0);
  CHECK(call({"reduce", blue}).status == 1);
}

TEST_CASE("verify exit status") {
  auto ok = call({"verify", "thm1"});
  CHECK(ok.status == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);
  auto tsv = call({"verify", "thm1", "--tsv"});
  CHECK(tsv.out.rfind("thm1\tk=-3\t-3\t-3\tmatch", 0) == 0);
  auto bounded = call({"verify", "thm1", "--bounds", "max_k=1"});
  CHECK(bounded.status == 0);
  CHECK(call({"verify", "thm1", "--bounds", "max_k=1", "--tsv"}).out ==
        "thm1\tk=-1\t-1\t-1\tmatch\nthm1\tk=0\t0\t0\tmatch\nthm1\tk=1\t1\t1\tmatch\n");
  // a sweep with known disagreements
  auto bad = call({"verify", "thm3", "--bounds", "max_per_vertex=2,max_total=6"});
  CHECK(bad.status == 3);
  CHECK(call({"verify", "thm1", "--bounds", "nonsense=1"}).status == 2);
  CHECK(call({"verify", "thm0"}).status == 2);
}

TEST_CASE("usage and domain errors") {
  TempDir dir;
  CHECK(call({}).status == 2);
  CHECK(call({"frobnicate"}).status == 2);
  CHECK(call({"moves"}).status == 2);
  CHECK(call({"eval", dir.file("missing.json")}).status == 1);
  const auto cyclic = dir.file("cyclic.json");
  write(cyclic, R"({"vertices":[{"id":0,"pebbles":[0,0,0]},{"id":1,"pebbles":[0,0,0]}],"arcs":[[0,1],[1,0]]})");
  auto c = call({"eval", cyclic});
  CHECK(c.status == 1);
  CHECK(c.err.find("cycle") != std::string::npos);
  CHECK(call({"gen", "wheel", "3"}).status == 2);
  CHECK(call({"gen", "path", "2", "--pebbles", "1,2"}).status == 2);
  CHECK(call({"search", "--max-vertices", "2"}).status == 2);
  CHECK(call({"search", "--target", "0", "--report-values"}).status == 2);
  CHECK(call({"search", "--target", "{0|"}).status == 2);
  CHECK(call({"--help"}).status == 0);
}

TEST_CASE("budget exhaustion") {
  TempDir dir;
  const auto path = dir.file("path.json");
  REQUIRE(call({"gen", "path", "4", "--pebbles", "0,0,3", "0,0,3", "0,0,3", "0,0,3", "-o", path}).status == 0);
  CHECK(call({"--budget", "3", "eval", path}).status == 4);
}

TEST_CASE("search") {
  auto census = call({"search", "--max-vertices", "2", "--max-pebbles", "3", "--report-values"});
  CHECK(census.status == 0);
  CHECK(census.out.rfind("value\tcount\texample\n", 0) == 0);
  CHECK(census.out.find("positions ") != std::string::npos);
  auto again = call({"search", "--max-vertices", "2", "--max-pebbles", "3", "--report-values"});
  CHECK(again.out == census.out);

  auto halves = call({"search", "--max-vertices", "3", "--max-pebbles", "4", "--colors", "br", "--target", "1/2^1"});
  CHECK(halves.status == 0);
  std::istringstream lines(halves.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    auto p = pebbles::parse_position(line);
    CHECK(p.totals().green == 0);
    CHECK(pebbles::Solver().game_value(p) == pebbles::number(pebbles::DyadicRational(1, 1)));
    ++n;
  }
  CHECK(n > 0);
}
