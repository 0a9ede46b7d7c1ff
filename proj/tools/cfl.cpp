#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cfl/graph_io.hpp"
#include "cfl/harness.hpp"

namespace {

int convert(const std::string& from, const std::string& to, const std::string& input, const std::string& output) {
  auto format = [](const std::string& name) {
    return name == "graph6" ? cfl::GraphFormat::kGraph6 : cfl::GraphFormat::kEdgeList;
  };
  std::string payload;
  if (input.empty() || input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    payload = ss.str();
  } else {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "cfl: cannot read " << input << "\n";
      return cfl::kExitInputError;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    payload = ss.str();
  }
  cfl::Graph g;
  try {
    g = cfl::parse_graph(payload, format(from));
  } catch (const cfl::ParseError& e) {
    std::cerr << "cfl: " << cfl::to_string(e.kind()) << " at line " << e.line() << ", offset " << e.offset() << ": "
              << e.what() << "\n";
    return cfl::kExitInputError;
  }
  std::string text = cfl::serialize_graph(g, format(to));
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    try {
      cfl::write_file_atomic(output, text);
    } catch (const std::exception& e) {
      std::cerr << "cfl: " << e.what() << "\n";
      return cfl::kExitInputError;
    }
  }
  return cfl::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cfl: clique-factor experiments"};
  app.require_subcommand(1);

  std::string config_path;
  cfl::RunOptions options;
  std::string out_dir = "cfl-out";
  std::uint64_t seed = 0;
  for (const auto& kind : cfl::experiment_kinds()) {
    auto* sub = app.add_subcommand(kind, kind + " experiment");
    sub->add_option("--config", config_path, "INI config file")->required();
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "master seed (overrides run.seed)");
    sub->add_option("--threads", options.threads, "workers for sweep grid points")
        ->check(CLI::Range(1, 1024))
        ->capture_default_str();
  }

  auto* graph = app.add_subcommand("graph", "graph file utilities");
  graph->require_subcommand(1);
  auto* conv = graph->add_subcommand("convert", "convert between edge list and graph6");
  std::string from;
  std::string to;
  std::string input;
  std::string output;
  conv->add_option("--from", from)->required()->check(CLI::IsMember({"edgelist", "graph6"}));
  conv->add_option("--to", to)->required()->check(CLI::IsMember({"edgelist", "graph6"}));
  conv->add_option("--in", input, "input file (default stdin)");
  conv->add_option("--output", output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? cfl::kExitOk : cfl::kExitConfigError;
  }

  if (conv->parsed()) return convert(from, to, input, output);

  CLI::App* chosen = app.get_subcommands().front();
  const std::string kind = chosen->get_name();
  options.out_dir = out_dir;
  if (chosen->count("--seed")) options.seed = seed;
  try {
    if (const char* env = std::getenv("CFL_NODE_BUDGET")) options.node_budget = cfl::parse_node_budget(env);
    cfl::Config config = cfl::Config::load(config_path);
    cfl::RunOutcome out = cfl::run(kind, std::move(config), options);
    const char* file = out.report.contains("points") ? "scan.json" : "report.json";
    std::cout << (std::filesystem::path(out_dir) / file).string() << "\n";
    if (out.report.contains("results")) std::cout << out.report["results"].dump() << "\n";
    if (out.exit_code == cfl::kExitCapHit) std::cerr << "cfl: resource cap hit, partial results written\n";
    return out.exit_code;
  } catch (const cfl::ConfigError& e) {
    std::cerr << "cfl: config error: " << e.what() << "\n";
    return cfl::kExitConfigError;
  } catch (const cfl::InputError& e) {
    std::cerr << "cfl: input error: " << e.what() << "\n";
    return cfl::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "cfl: " << e.what() << "\n";
    return 1;
  }
}
