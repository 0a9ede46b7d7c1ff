#pragma once

// Experiment configs, dispatch and report emission behind the cfl CLI.
//
// A config is an INI file. Keys live in sections and are addressed as
// "section.key" everywhere (errors, sweeps, the canonical form used for
// hashing). [run] holds kind, seed and caps, [graph] describes the input
// graph, each kind reads its own section, and [sweep] turns a run into a scan.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cfl/graph.hpp"
#include "cfl/rational.hpp"

namespace cfl {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitInputError = 3,
  kExitCapHit = 4,
};

/// Invalid config; `field` is the "section.key" path at fault (may be empty).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Missing or unreadable input file, or a graph payload that fails to parse.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Config {
 public:
  static Config parse(std::string_view text);
  /// Throws InputError when the file cannot be read.
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  void set(const std::string& key, std::string value);
  /// Removes every key of the section; returns the removed entries.
  std::map<std::string, std::string> take_section(const std::string& section);

  const std::map<std::string, std::string>& entries() const { return values_; }
  /// "section.key=value\n" lines in key order.
  std::string canonical() const;
  /// FNV-1a 64 of canonical(), as "fnv1a64:" + 16 hex digits.
  std::string hash() const;

 private:
  std::map<std::string, std::string> values_;
};

/// Typed access that remembers which keys were read, so leftovers can be
/// reported as unknown.
class ConfigReader {
 public:
  explicit ConfigReader(const Config& config) : config_(config) {}

  bool has(const std::string& key) const { return config_.has(key); }
  std::string str(const std::string& key, std::optional<std::string> fallback = std::nullopt);
  std::int64_t integer(const std::string& key, std::optional<std::int64_t> fallback = std::nullopt,
                       std::int64_t lo = INT64_MIN, std::int64_t hi = INT64_MAX);
  std::uint64_t unsigned_integer(const std::string& key, std::optional<std::uint64_t> fallback = std::nullopt);
  double real(const std::string& key, std::optional<double> fallback = std::nullopt);
  Rational rational(const std::string& key, std::optional<Rational> fallback = std::nullopt);
  bool boolean(const std::string& key, std::optional<bool> fallback = std::nullopt);
  std::vector<int> int_list(const std::string& key);
  /// "0-9,12" style ranges (inclusive), every id below n.
  VertexSet vertex_set(const std::string& key, int n);
  /// Vertex sets separated by '|'.
  std::vector<VertexSet> vertex_sets(const std::string& key, int n);
  std::string one_of(const std::string& key, const std::vector<std::string>& choices,
                     std::optional<std::string> fallback = std::nullopt);

  /// Throws ConfigError naming the first key of `sections` that was never read.
  void reject_unknown(const std::vector<std::string>& sections) const;

 private:
  const std::string& raw(const std::string& key);

  const Config& config_;
  std::map<std::string, bool> used_;
};

/// Vertex id list syntax shared by configs: "0-3,7" -> {0,1,2,3,7}.
std::vector<int> parse_id_list(std::string_view text);

struct RunOptions {
  std::filesystem::path out_dir = "cfl-out";
  std::optional<std::uint64_t> seed;        // overrides run.seed
  int threads = 1;
  std::optional<std::int64_t> node_budget;  // overrides run.node_budget (CFL_NODE_BUDGET)
};

struct RunOutcome {
  nlohmann::json report;
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> written;
};

const std::vector<std::string>& experiment_kinds();

/// Executes one experiment and writes report.json (plus any artifacts) into
/// options.out_dir. Throws ConfigError / InputError; a hit resource cap is
/// reported through exit_code = kExitCapHit with the partial report written.
RunOutcome run_experiment(const std::string& kind, Config config, const RunOptions& options);

/// Runs every grid point of [sweep] (key, values, optional replicates) into
/// out_dir/point-NNNN[-rep-NN]/ and writes out_dir/aggregate.csv and
/// out_dir/scan.json. Grid points run on options.threads workers.
RunOutcome run_scan(const std::string& kind, Config config, const RunOptions& options);

/// Dispatches to run_scan when the config has a [sweep] section.
RunOutcome run(const std::string& kind, Config config, const RunOptions& options);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Parses CFL_NODE_BUDGET-style text; throws ConfigError on junk.
std::int64_t parse_node_budget(std::string_view text);

}  // namespace cfl
