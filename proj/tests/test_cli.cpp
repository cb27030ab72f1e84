#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zlab/cli.hpp"

using namespace zlab::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("zlab_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const UsageError& e) {
    return e.what();
  }
  return "";
}

int run_quiet(const ExperimentConfig& c) {
  std::ostringstream log;
  return run(c, log);
}

Json manifest_of(const fs::path& dir, const std::string& command) {
  return Json::parse(slurp(dir / (command + ".manifest.json")));
}

}  // namespace

TEST_CASE("minimal config echoes every default") {
  const auto c = config_from_json("solve", Json::object());
  CHECK(c.seed == 0);
  CHECK(c.outputDir == "zlab_out");
  CHECK(c.parameters == command_defaults("solve"));
  CHECK(c.parameters["dt"] == 1e-4);
  for (const auto& name : command_names()) CHECK_NOTHROW(command_defaults(name));
}

TEST_CASE("unknown keys, type mismatches and missing fields are usage errors") {
  CHECK(error_of([] { config_from_json("solve", Json::parse(R"({"parameters": {"gridd": 3}})")); })
            .find("gridd") != std::string::npos);
  CHECK(error_of([] { config_from_json("solve", Json::parse(R"({"gridd": 3})")); }).find("gridd") !=
        std::string::npos);
  CHECK(error_of([] { parse_config("solve", std::nullopt, {{"gridd", "3"}}, {}, {}, {}); }).find("gridd") !=
        std::string::npos);
  CHECK_THROWS_AS(config_from_json("solve", Json::parse(R"({"parameters": {"n": "big"}})")), UsageError);
  CHECK_THROWS_AS(config_from_json("solve", Json::parse(R"({"parameters": {"n": 1.5}})")), UsageError);
  CHECK_THROWS_AS(config_from_json("solve", Json::parse(R"({"seed": -1})")), UsageError);
  CHECK_THROWS_AS(config_from_json("nope", Json::object()), UsageError);
  CHECK_THROWS_AS(parse_config("solve", std::nullopt, {{"dt", "fast"}}, {}, {}, {}), UsageError);

  const auto dir = scratch("missing");
  auto c = config_from_json("counterexample", Json::object());
  c.outputDir = dir.string();
  CHECK(run_quiet(c) == 2);
  CHECK(manifest_of(dir, "counterexample")["error"].get<std::string>().find("lemma") != std::string::npos);
}

TEST_CASE("config round trip and flag precedence") {
  auto c = parse_config("counterexample", std::nullopt, {{"lemma", "c2"}, {"sigma", "-0.5"}, {"n-max", "128"}}, 42,
                        std::string("out_dir"), std::string("json"));
  CHECK(c.parameters["lemma"] == "c2");
  CHECK(c.parameters["sigma"] == -0.5);
  CHECK(c.parameters["nMax"] == 128.0);
  CHECK(c.seed == 42);
  const auto back = config_from_json("counterexample", config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));

  const auto dir = scratch("precedence");
  fs::create_directories(dir);
  const auto file = dir / "cfg.json";
  std::ofstream(file) << R"({"outputDir": "from_file", "seed": 5, "parameters": {"c0": 2.0}})";
  ::setenv("ZLAB_OUT_DIR", "from_env", 1);
  auto f = parse_config("lifespan", file.string(), {}, {}, {}, {});
  CHECK(f.outputDir == "from_env");
  CHECK(f.seed == 5);
  CHECK(f.parameters["c0"] == 2.0);
  f = parse_config("lifespan", file.string(), {{"c0", "3"}}, 9, std::string("from_flag"), {});
  CHECK(f.outputDir == "from_flag");
  CHECK(f.seed == 9);
  CHECK(f.parameters["c0"] == 3.0);
  ::unsetenv("ZLAB_OUT_DIR");
  CHECK(parse_config("lifespan", file.string(), {}, {}, {}, {}).outputDir == "from_file");
  CHECK_THROWS_AS(parse_config("lifespan", (dir / "absent.json").string(), {}, {}, {}, {}), UsageError);
}

TEST_CASE("CSV emission") {
  Table empty;
  empty.columns = {"a"};
  CHECK_THROWS(format_csv(empty));
  Table one;
  one.columns = {"N", "ratio"};
  one.add({num(16), num(0.1)});
  CHECK(format_csv(one) == "N,ratio\n16,0.10000000000000001\n");
  CHECK_THROWS(one.add({"1"}));

  Table t;
  t.columns = {"x", "y"};
  const std::vector<double> xs{1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.1 + 0.2};
  for (double x : xs) t.add({num(x), num(std::exp(x > 1 ? 1.0 : x))});
  const Table back = parse_csv(format_csv(t));
  REQUIRE(back.rows.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::stod(back.rows[i][0]) == xs[i]);
  CHECK(back.columns == t.columns);

  const auto dir = scratch("atomic");
  emit_csv((dir / "a.csv").string(), one);
  CHECK(slurp(dir / "a.csv") == format_csv(one));
  int leftovers = 0;
  for (const auto& e : fs::directory_iterator(dir)) leftovers += e.path().filename() != "a.csv";
  CHECK(leftovers == 0);
  CHECK_THROWS(write_atomic("/proc/zlab_no_such_dir/a.csv", "x"));
}

TEST_CASE("SVG plots") {
  Plot p;
  p.title = "t";
  p.xlabel = "N";
  p.ylabel = "ratio";
  p.logx = p.logy = true;
  p.series.push_back({"s", {1, 10, 100}, {1, 2, 4}});
  const auto svg = format_svg(p);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("N (log10)") != std::string::npos);
  CHECK(svg.find("ratio (log10)") != std::string::npos);
  p.series[0].y[0] = 0.0;
  CHECK_THROWS(format_svg(p));
}

TEST_CASE("runs are deterministic and exit codes follow the checks") {
  for (const auto& [cmd, flags] :
       std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>{
           {"psi-check", {{"samples", "2000"}}},
           {"counterexample", {{"lemma", "c1"}, {"sigma", "-1"}, {"ell", "-0.5"}}}}) {
    const auto a = scratch(cmd + "_a"), b = scratch(cmd + "_b");
    CHECK(run_quiet(parse_config(cmd, std::nullopt, flags, 3, a.string(), {})) == 0);
    CHECK(run_quiet(parse_config(cmd, std::nullopt, flags, 3, b.string(), {})) == 0);
    CHECK(slurp(a / (cmd + ".csv")) == slurp(b / (cmd + ".csv")));
    auto ma = manifest_of(a, cmd), mb = manifest_of(b, cmd);
    for (auto* m : {&ma, &mb}) {
      m->erase("elapsed_s");
      m->erase("config");
      m->erase("files");
    }
    CHECK(ma == mb);
    CHECK(ma["version"] == "1.0.0");
  }
  // a check that cannot pass gives exit code 1 and still writes a manifest
  const auto dir = scratch("fail");
  const auto c = parse_config("solve", std::nullopt,
                              {{"n", "16"}, {"m-box", "2"}, {"T", "0.001"}, {"mass-tolerance", "-1"}}, {},
                              dir.string(), {});
  CHECK(run_quiet(c) == 1);
  const auto man = manifest_of(dir, "solve");
  CHECK(man["checks"][0]["pass"] == false);
  for (const char* key : {"command", "config", "version", "seed", "checks", "elapsed_s"}) CHECK(man.contains(key));
  CHECK(fs::exists(dir / "solve.csv"));
  CHECK(slurp(dir / "solve.csv").rfind("t,mass,Hm12_n,Hm32_dtn\n", 0) == 0);

  // module hypothesis violations are reported as bad input
  const auto bad = scratch("bad");
  CHECK(run_quiet(parse_config("estimate-sweep", std::nullopt, {{"estimate", "TransLowMod"}, {"N", "32"}}, {},
                               bad.string(), {})) == 2);
  CHECK(manifest_of(bad, "estimate-sweep")["error"].get<std::string>().find("64 <= N") != std::string::npos);
}

TEST_CASE("command line entry point") {
  const auto dir = scratch("argv");
  auto call = [](std::vector<std::string> args) {
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return main_entry(static_cast<int>(argv.size()), argv.data());
  };
  CHECK(call({"zlab"}) == 2);
  CHECK(call({"zlab", "frobnicate"}) == 2);
  CHECK(call({"zlab", "lifespan", "--gridd", "3", "--out", dir.string()}) == 2);
  CHECK(call({"zlab", "lifespan", "--seed", "abc", "--out", dir.string()}) == 2);
  CHECK(call({"zlab", "lifespan", "--c0=2", "--seed", "7", "--out", dir.string()}) == 0);
  const auto man = manifest_of(dir, "lifespan");
  CHECK(man["seed"] == 7);
  CHECK(man["config"]["parameters"]["c0"] == 2.0);
  CHECK(call({"zlab", "counterexample", "--lemma", "c1", "--sigma", "-1", "--ell", "-0.5", "--out", dir.string()}) ==
        0);
  const auto ce = manifest_of(dir, "counterexample");
  CHECK(std::fabs(ce["measured"]["fittedSlope"].get<double>()) <= 0.15);
  const Table t = parse_csv(slurp(dir / "counterexample.csv"));
  CHECK(t.columns == std::vector<std::string>{"N", "ratio"});
  CHECK(t.rows.size() == 5);
}
