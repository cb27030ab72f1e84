#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "zlab/cli.hpp"

namespace zlab::cli {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "psi-check", "norm",  "estimate-sweep", "trilinear-sweep", "counterexample", "duhamel-lb",   "localize-check",
      "solve",     "nls",   "subsonic",       "ground-state",    "blowup-trace",   "lifespan"};
  return names;
}

Json command_defaults(const std::string& command) {
  if (command == "psi-check")
    return {{"samples", 100000}, {"topExponent", 12}, {"angularA", {4, 16, 64}}, {"angularSamples", 10000}};
  if (command == "norm")
    return {{"n", 32},         {"mBox", 2.0}, {"nT", 32},  {"tWindow", 1.0}, {"N", 4.0},
            {"L", 4.0},        {"flavor", "S"}, {"sigma", 0.0}, {"b", 0.5}, {"p", 2.0}};
  if (command == "estimate-sweep")
    return {{"estimate", nullptr}, {"point", 1},     {"seeds", 25},     {"level", 1},      {"refine", true},
            {"N", nullptr},        {"N1", nullptr},  {"N2", nullptr},   {"L", nullptr},    {"L1", nullptr},
            {"L2", nullptr},       {"A", nullptr},   {"j1", nullptr},   {"j2", nullptr},   {"sign", nullptr},
            {"d", nullptr},        {"cubeX", nullptr}, {"cubeY", nullptr}};
  if (command == "trilinear-sweep")
    return {{"seeds", 50}, {"n", 32}, {"nT", 32}, {"refine", true}, {"conjugate", true}};
  if (command == "counterexample")
    return {{"lemma", nullptr}, {"sigma", -1.0}, {"k", 0.0},  {"ell", -0.5}, {"bPrime", 0.5}, {"b1", 0.5},
            {"b2", 0.5},        {"nMin", 16.0},  {"nMax", 256.0}, {"q", 16},  {"panels", 1}};
  if (command == "duhamel-lb")
    return {{"prop", 1}, {"k", 0.0}, {"ell", -0.5}, {"T", 1.0}, {"tFraction", 0.5}, {"nMin", 32.0}, {"nMax", 512.0},
            {"q", 16}};
  if (command == "localize-check") return {{"N1", 64.0}, {"A", 8}, {"kOffset", 0.0}, {"mesh", 1e-3}};
  if (command == "solve")
    return {{"n", 128},        {"mBox", 8.0},     {"dt", 1e-4},      {"T", 0.1},       {"waveSpeed", 1.0},
            {"integrator", "strang"}, {"dealias", true}, {"snapshotEvery", 100}, {"uAmp", 1.0}, {"nAmp", 0.5},
            {"n1Amp", 0.0},    {"massTolerance", 1e-6}, {"writeTrajectory", false}};
  if (command == "nls")
    return {{"n", 128}, {"mBox", 8.0}, {"dt", 1e-4}, {"T", 0.1}, {"snapshotEvery", 100}, {"uAmp", 1.0},
            {"massTolerance", 1e-10}};
  if (command == "subsonic")
    return {{"n", 64}, {"mBox", 4.0}, {"dt", 1e-4}, {"T", 0.05}, {"speeds", {1.0, 2.0, 4.0, 8.0}}, {"uAmp", 1.0}};
  if (command == "ground-state")
    return {{"n", 256}, {"mBox", 6.0}, {"tol", 1e-10}, {"maxIter", 10000}, {"massTolerance", 1e-3}};
  if (command == "blowup-trace")
    return {{"profile", "ground-state"}, {"n", 256},     {"mBox", 6.0},  {"omega", 1.0}, {"theta", 0.0},
            {"T", 1.0},                  {"sMin", 1e-3}, {"sMax", 1e-1}, {"points", 9}};
  if (command == "lifespan")
    return {{"c0", 1.0}, {"r", 1.0}, {"R", {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0}}};
  throw UsageError("unknown command: " + command);
}

namespace {

bool same_kind(const Json& def, const Json& v) {
  if (def.is_null()) return !v.is_object();
  if (def.is_boolean()) return v.is_boolean();
  if (def.is_number_integer()) return v.is_number_integer();
  if (def.is_number()) return v.is_number();
  if (def.is_string()) return v.is_string();
  if (def.is_array()) {
    if (!v.is_array()) return false;
    for (const auto& x : v)
      if (!def.empty() && !same_kind(def.front(), x)) return false;
    return true;
  }
  return false;
}

const char* kind_name(const Json& def) {
  if (def.is_boolean()) return "boolean";
  if (def.is_number_integer()) return "integer";
  if (def.is_number()) return "number";
  if (def.is_string()) return "string";
  if (def.is_array()) return "array";
  return "scalar";
}

// Parses a flag value against the kind of the default.
Json parse_flag_value(const std::string& key, const Json& def, const std::string& raw) {
  if (def.is_string()) return raw;
  Json v;
  try {
    v = Json::parse(raw);
  } catch (const std::exception&) {
    if (def.is_null()) return raw;  // required keys without a fixed kind accept bare words
    throw UsageError("flag --" + key + ": cannot parse value '" + raw + "'");
  }
  if (def.is_number() && !def.is_number_integer() && v.is_number()) v = v.get<double>();
  if (def.is_array() && v.is_number()) v = Json::array({v});
  if (!same_kind(def, v)) throw UsageError("flag --" + key + ": expected " + kind_name(def));
  return v;
}

std::string camel(const std::string& key) {
  std::string out;
  bool up = false;
  for (char ch : key) {
    if (ch == '-') {
      up = true;
      continue;
    }
    out += up ? static_cast<char>(std::toupper(static_cast<unsigned char>(ch))) : ch;
    up = false;
  }
  return out;
}

}  // namespace

ExperimentConfig config_from_json(const std::string& command, const Json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  ExperimentConfig c;
  c.command = command;
  const Json defaults = command_defaults(command);
  c.parameters = defaults;
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      if (!value.is_string() || value.get<std::string>() != command)
        throw UsageError("config command does not match '" + command + "'");
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0))
        throw UsageError("seed must be a nonnegative integer");
      c.seed = value.get<std::uint64_t>();
    } else if (key == "outputDir") {
      if (!value.is_string()) throw UsageError("outputDir must be a string");
      c.outputDir = value.get<std::string>();
    } else if (key == "format") {
      if (!value.is_string()) throw UsageError("format must be a string");
      c.format = value.get<std::string>();
    } else if (key == "parameters") {
      if (!value.is_object()) throw UsageError("parameters must be an object");
      for (const auto& [pk, pv] : value.items()) {
        if (!defaults.contains(pk)) throw UsageError("unknown key: " + pk);
        Json v = pv;
        if (defaults[pk].is_number() && !defaults[pk].is_number_integer() && v.is_number()) v = v.get<double>();
        if (!same_kind(defaults[pk], v))
          throw UsageError("key " + pk + ": expected " + kind_name(defaults[pk]));
        c.parameters[pk] = v;
      }
    } else {
      throw UsageError("unknown key: " + key);
    }
  }
  if (c.format != "csv" && c.format != "json") throw UsageError("format must be csv or json");
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["command"] = c.command;
  j["seed"] = c.seed;
  j["outputDir"] = c.outputDir;
  j["format"] = c.format;
  j["parameters"] = c.parameters;
  return j;
}

ExperimentConfig parse_config(const std::string& command, const std::optional<std::string>& path,
                              const std::vector<std::pair<std::string, std::string>>& flags,
                              const std::optional<std::uint64_t>& seed, const std::optional<std::string>& out,
                              const std::optional<std::string>& format) {
  Json file = Json::object();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw UsageError("cannot read config file: " + *path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      file = Json::parse(ss.str());
    } catch (const std::exception& e) {
      throw UsageError("config file is not valid JSON: " + std::string(e.what()));
    }
  }
  ExperimentConfig c = config_from_json(command, file);
  if (const char* env = std::getenv("ZLAB_OUT_DIR"); env && *env) c.outputDir = env;
  const Json defaults = command_defaults(command);
  for (const auto& [raw_key, raw] : flags) {
    const std::string key = defaults.contains(raw_key) ? raw_key : camel(raw_key);
    if (!defaults.contains(key)) throw UsageError("unknown key: " + raw_key);
    c.parameters[key] = parse_flag_value(key, defaults[key], raw);
  }
  if (seed) c.seed = *seed;
  if (out) c.outputDir = *out;
  if (format) {
    if (*format != "csv" && *format != "json") throw UsageError("format must be csv or json");
    c.format = *format;
  }
  return c;
}

}  // namespace zlab::cli
