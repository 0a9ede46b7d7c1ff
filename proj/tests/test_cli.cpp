#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cfl/graph_io.hpp"
#include "cfl/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("cfl-cli-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int sh(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const std::string kCfl = CFL_BINARY;

}  // namespace

TEST_CASE("cfl alpha writes a schema-1 report and exits 0") {
  fs::path dir = scratch("alpha");
  put(dir / "c.ini", "[graph]\nsource = builtin\nname = c5\n[alpha]\nell = 2\n");
  CHECK(sh(kCfl + " alpha --config " + (dir / "c.ini").string() + " --out " + (dir / "out").string() +
           " --seed 5 > /dev/null") == 0);
  json rep = json::parse(slurp(dir / "out" / "report.json"));
  CHECK(rep["schema"] == 1);
  CHECK(rep["seed"] == 5);
  CHECK(rep["results"]["value"] == 2);
}

TEST_CASE("exit codes") {
  fs::path dir = scratch("codes");
  std::string out = " --out " + (dir / "out").string() + " > /dev/null 2>&1";
  put(dir / "bad.ini", "[graph]\nsource = builtin\nname = c5\n[alpha]\nell = two\n");
  CHECK(sh(kCfl + " alpha --config " + (dir / "bad.ini").string() + out) == 2);
  CHECK(sh(kCfl + " alpha --config " + (dir / "none.ini").string() + out) == 3);
  CHECK(sh(kCfl + " alpha" + out) == 2);
  CHECK(sh(kCfl + " frobnicate --config x" + out) == 2);

  put(dir / "missing.ini", "[graph]\nsource = file\npath = /nonexistent/g.txt\n[alpha]\nell = 2\n");
  CHECK(sh(kCfl + " alpha --config " + (dir / "missing.ini").string() + out) == 3);

  put(dir / "cap.ini", "[graph]\nsource = gnp\nn = 60\np = 0.5\n[alpha]\nell = 2\n");
  CHECK(sh("CFL_NODE_BUDGET=5 " + kCfl + " alpha --config " + (dir / "cap.ini").string() + out) == 4);
  json rep = json::parse(slurp(dir / "out" / "report.json"));
  CHECK(rep["flags"]["cap_hit"] == true);
  CHECK(rep["node_budget"] == 5);
  CHECK(sh("CFL_NODE_BUDGET=lots " + kCfl + " alpha --config " + (dir / "cap.ini").string() + out) == 2);
  CHECK(sh(kCfl + " --help > /dev/null") == 0);
}

TEST_CASE("graph convert between edge list and graph6") {
  fs::path dir = scratch("convert");
  put(dir / "c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
  CHECK(sh(kCfl + " graph convert --from edgelist --to graph6 < " + (dir / "c5.txt").string() + " > " +
           (dir / "c5.g6").string()) == 0);
  CHECK(slurp(dir / "c5.g6") == "Dhc\n");
  CHECK(sh(kCfl + " graph convert --from graph6 --to edgelist --in " + (dir / "c5.g6").string() + " --output " +
           (dir / "back.txt").string()) == 0);
  CHECK(cfl::parse_edge_list(slurp(dir / "back.txt")) == cfl::parse_edge_list(slurp(dir / "c5.txt")));
  put(dir / "broken.txt", "5 2\n0 1\n");
  CHECK(sh(kCfl + " graph convert --from edgelist --to graph6 --in " + (dir / "broken.txt").string() +
           " > /dev/null 2>&1") == 3);
  CHECK(sh(kCfl + " graph convert --from dot --to graph6 < /dev/null > /dev/null 2>&1") == 2);
}

TEST_CASE("a sweep through the CLI writes the aggregate") {
  fs::path dir = scratch("sweep");
  put(dir / "s.ini",
      "[graph]\nsource = gnp\nn = 10\np = 0.5\n[tile]\nr = 3\n[sweep]\nkey = graph.p\nvalues = 0.2,0.5,0.9\n");
  CHECK(sh(kCfl + " tile --config " + (dir / "s.ini").string() + " --out " + (dir / "out").string() +
           " --threads 2 > /dev/null") == 0);
  std::string csv = slurp(dir / "out" / "aggregate.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(fs::exists(dir / "out" / "point-0002" / "report.json"));
  CHECK(json::parse(slurp(dir / "out" / "scan.json"))["schema"] == 1);
}
