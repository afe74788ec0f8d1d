#include <doctest.h>

#include <cstdio>
#include <string>

#include "layerctx/case_study.hpp"
#include "layerctx/config.hpp"
#include "layerctx/report.hpp"

using namespace layerctx;

namespace {

std::string field_of(const std::string& json_text) {
  try {
    parse_app_config(json_text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("empty object parses to the default configuration") {
  AppConfig cfg = parse_app_config("{}");
  CHECK(cfg.simulation.n_users == 200);
  CHECK(cfg.simulation.duration == 800.0);
  CHECK(cfg.simulation.seed == 1);
  CHECK(cfg.simulation.granularity == Granularity::Session);
  CHECK(cfg.controller_enabled);
  CHECK(cfg.controller.kp == 0.8);
  CHECK(cfg.controller.ki == 0.3);
  REQUIRE(cfg.setpoints.size() == 3);
  CHECK(cfg.setpoints[1].t == 400.0);
  CHECK(cfg.setpoints[1].bytes_per_sec == 9e6);
  REQUIRE(cfg.constraints.excludes.size() == 1);
  CHECK(cfg.constraints.excludes[0].first == "high_band");
  CHECK(cfg.constraints.excludes[0].second == "low_band");
}

TEST_CASE("configs round-trip through their JSON form") {
  AppConfig cfg;
  cfg.simulation.n_users = 33;
  cfg.simulation.seed = 99;
  cfg.simulation.granularity = Granularity::Component;
  cfg.simulation.think_time_jitter = true;
  cfg.simulation.page_bytes.first_high = 7000;
  cfg.controller.kp = 1.25;
  cfg.controller_enabled = false;
  cfg.setpoints = {{0.0, 2e6}, {100.0, 3e6}};
  RuleSpec rule;
  rule.name = "overload";
  rule.op = "<";
  rule.threshold = 1e6;
  rule.activate = {"low_band"};
  rule.deactivate = {"high_band"};
  cfg.rules = {rule};
  cfg.constraints.dependencies = {{"high_band", "low_band"}};

  AppConfig back = parse_app_config(app_config_to_json(cfg));
  CHECK(back.simulation.n_users == 33);
  CHECK(back.simulation.seed == 99);
  CHECK(back.simulation.granularity == Granularity::Component);
  CHECK(back.simulation.think_time_jitter);
  CHECK(back.simulation.page_bytes.first_high == 7000);
  CHECK(back.controller.kp == 1.25);
  CHECK_FALSE(back.controller_enabled);
  REQUIRE(back.setpoints.size() == 2);
  CHECK(back.setpoints[1].bytes_per_sec == 3e6);
  REQUIRE(back.rules.size() == 1);
  CHECK(back.rules[0].op == "<");
  CHECK(back.rules[0].deactivate == std::vector<std::string>{"high_band"});
  REQUIRE(back.constraints.dependencies.size() == 1);
  CHECK(back.constraints.dependencies[0].first == "high_band");
  // The serialized form is stable.
  CHECK(app_config_to_json(back) == app_config_to_json(cfg));
}

TEST_CASE("unknown keys are rejected with their dotted path") {
  CHECK(field_of(R"({"simulaton": {}})") == "simulaton");
  CHECK(field_of(R"({"simulation": {"users": 3}})") == "simulation.users");
  CHECK(field_of(R"({"simulation": {"page": {"bytes": {"first": 1}}}})") ==
        "simulation.page.bytes.first");
  CHECK(field_of(R"({"controller": {"kd": 0.1}})") == "controller.kd");
  CHECK(field_of(R"({"constraints": {"conflicts": []}})") == "constraints.conflicts");
}

TEST_CASE("type and value errors carry the field path") {
  CHECK(field_of(R"({"simulation": {"n_users": "many"}})") == "simulation.n_users");
  CHECK(field_of(R"({"simulation": {"n_users": 2.5}})") == "simulation.n_users");
  CHECK(field_of(R"({"simulation": {"seed": -4}})") == "simulation.seed");
  CHECK(field_of(R"({"simulation": {"think_time_jitter": 1}})") ==
        "simulation.think_time_jitter");
  CHECK(field_of(R"({"simulation": {"granularity": "request"}})") ==
        "simulation.granularity");
  CHECK(field_of(R"({"setpoints": [{"t": 0}]})") == "setpoints[0]");
  CHECK(field_of(R"({"setpoints": [{"t": 0, "bytes_per_sec": 0}]})") ==
        "setpoints[0].bytes_per_sec");
  CHECK(field_of(R"({"setpoints": [{"t": 5, "bytes_per_sec": 1},
                                   {"t": 5, "bytes_per_sec": 2}]})") == "setpoints[1].t");
  CHECK(field_of(R"({"rules": [{"op": ">"}]})") == "rules[0]");  // missing threshold
  CHECK(field_of(R"({"rules": [{"threshold": 1, "activate": [3]}]})") ==
        "rules[0].activate");
  CHECK(field_of(R"({"constraints": {"excludes": [["a"]]}})") == "constraints.excludes[0]");
  // Domain validation runs after parsing.
  CHECK(field_of(R"({"simulation": {"duration": 100.5}})") == "simulation.duration");
  CHECK(field_of(
            R"({"simulation": {"page": {"bytes": {"first_high": 10, "first_low": 10}}}})") ==
        "simulation.page.bytes.first_high");
  CHECK_THROWS_AS(parse_app_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_app_config("[1,2]"), ConfigError);
}

TEST_CASE("bad rule operators surface when the case study is assembled") {
  AppConfig cfg;
  RuleSpec rule;
  rule.op = ">=";
  rule.threshold = 1.0;
  cfg.rules = {rule};
  try {
    make_case_study(cfg);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "rules[0].op");
  }
}

TEST_CASE("manifests reload as the config they recorded") {
  AppConfig cfg;
  cfg.simulation.n_users = 12;
  cfg.simulation.duration = 40.0;
  cfg.simulation.ramp_interval = 10.0;
  cfg.setpoints = {{0.0, 7e5}};

  TempFile manifest("layerctx_test_manifest.json");
  write_text_file(manifest.path, manifest_json(cfg, "simulate"));
  AppConfig back = load_app_config(manifest.path);
  CHECK(back.simulation.n_users == 12);
  CHECK(app_config_to_json(back) == app_config_to_json(cfg));

  TempFile plain("layerctx_test_plain.json");
  write_text_file(plain.path, app_config_to_json(cfg));
  AppConfig back2 = load_app_config(plain.path);
  CHECK(app_config_to_json(back2) == app_config_to_json(cfg));

  CHECK_THROWS_AS(load_app_config("/nonexistent/nothing.json"), ConfigError);
}

TEST_CASE("doubles format as the shortest round-trip decimal") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-3.0) == "-3");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(7.5e6) == "7500000");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0).substr(0, 4) == "0.33");
}

TEST_CASE("csv writers emit pinned headers and one row per record") {
  BandwidthSeries s;
  s.run = "b";
  s.rows = {{0.0, 123456.0, 7.5e6, 4.0, 2.0}, {1.0, 0.0, 7.5e6, 0.0, 0.0}};
  const std::string csv = series_csv({&s});
  CHECK(csv ==
        "t,bandwidth_bytes_per_sec,setpoint,high_sessions_per_sec,low_sessions_per_sec,run\n"
        "0,123456,7500000,4,2,b\n"
        "1,0,7500000,0,0,b\n");

  BenchReport r{"page", "cop", 1000, 1000, {0.002}, 0.0, 0};
  const std::string bcsv = bench_csv({r});
  CHECK(bcsv ==
        "bench,variant,param,per_call_ns,mean_ms,reps\n"
        "page,cop,1000,2000,2,1\n");
}

TEST_CASE("tracking segments summarize windows after the settling cutoff") {
  AppConfig cfg;
  cfg.simulation.n_users = 10;
  cfg.simulation.ramp_interval = 0.0;
  cfg.simulation.duration = 200.0;
  cfg.setpoints = {{0.0, 300000.0}, {100.0, 400000.0}};

  BandwidthSeries s;
  s.run = "b";
  for (int t = 0; t < 200; ++t) {
    const double sp = t < 100 ? 300000.0 : 400000.0;
    s.rows.push_back({static_cast<double>(t), sp + 1000.0, sp, 0.0, 0.0});
  }
  const auto segs = tracking_segments(s, cfg, 50.0);
  REQUIRE(segs.size() == 2);
  // Segment 1 starts at t=0, ramp ends at 0, settle 50: windows [50, 100).
  CHECK(segs[0].windows == 50);
  CHECK(segs[0].setpoint == 300000.0);
  CHECK(segs[0].mean_bandwidth == doctest::Approx(301000.0));
  // Segment 2: windows [150, 200).
  CHECK(segs[1].windows == 50);
  CHECK(segs[1].mean_abs_err_pct == doctest::Approx(1000.0 / 400000.0 * 100.0));
  CHECK(segs[1].max_abs_err_pct == doctest::Approx(0.25));
}
