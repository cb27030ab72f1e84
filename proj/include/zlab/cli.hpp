#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace zlab::cli {

using Json = nlohmann::ordered_json;

// Bad flags, unknown keys, type mismatches, missing fields: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string command;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  std::string outputDir = "zlab_out";
  std::string format = "csv";  // data table format: csv or json
};

const std::vector<std::string>& command_names();
// Default parameter tree of a command; a null default marks a required key.
Json command_defaults(const std::string& command);

// Strict JSON config: top-level keys command, seed, outputDir, format, parameters.
ExperimentConfig config_from_json(const std::string& command, const Json& j);
Json config_to_json(const ExperimentConfig& c);
// File values, then ZLAB_OUT_DIR, then flags. `flags` are (key, raw value) pairs
// naming parameters; global flags are passed separately.
ExperimentConfig parse_config(const std::string& command, const std::optional<std::string>& path,
                              const std::vector<std::pair<std::string, std::string>>& flags,
                              const std::optional<std::uint64_t>& seed, const std::optional<std::string>& out,
                              const std::optional<std::string>& format);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

// %.17g
std::string num(double x);
std::string format_csv(const Table& t);
Table parse_csv(const std::string& text);
Json table_to_json(const Table& t);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct RunManifest {
  std::string command;
  Json config;
  std::string version;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  Json measured = Json::object();
  std::vector<std::string> files;
  std::string error;
  double elapsed_s = 0.0;
};

Json manifest_to_json(const RunManifest& m);

struct Series {
  std::string name;
  std::vector<double> x, y;
};

struct Plot {
  std::string title, xlabel, ylabel;
  bool logx = false, logy = false;
  std::vector<Series> series;
};

std::string format_svg(const Plot& p);

// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::string& path, const std::string& content);
void emit_csv(const std::string& path, const Table& t);
void emit_manifest(const std::string& path, const RunManifest& m);
void emit_svg(const std::string& path, const Plot& p);

// Runs one experiment, writes its files and manifest, returns the exit code.
int run(const ExperimentConfig& c, std::ostream& log);

// Full command line entry point.
int main_entry(int argc, char** argv);

}  // namespace zlab::cli
