#include "layerctx/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "layerctx/errors.hpp"
#include "layerctx/version.hpp"

namespace layerctx {

namespace {

using json = nlohmann::ordered_json;

std::string join_path(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "must be an object");
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) known = true;
    if (!known) throw ConfigError(join_path(path, key), "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join_path(path, key), "must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(join_path(path, key), "must be an integer");
  return v.get<int>();
}

std::int64_t get_int64(const json& obj, const std::string& path, const char* key,
                       std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(join_path(path, key), "must be an integer");
  return v.get<std::int64_t>();
}

std::uint64_t get_uint64(const json& obj, const std::string& path, const char* key,
                         std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    throw ConfigError(join_path(path, key), "must be a non-negative integer");
  return v.get<std::uint64_t>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(join_path(path, key), "must be a boolean");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(join_path(path, key), "must be a string");
  return v.get<std::string>();
}

Granularity parse_granularity(const std::string& s, const std::string& path) {
  if (s == "session") return Granularity::Session;
  if (s == "page") return Granularity::Page;
  if (s == "component") return Granularity::Component;
  throw ConfigError(path, "must be \"session\", \"page\" or \"component\", got \"" + s + "\"");
}

const char* granularity_name(Granularity g) {
  switch (g) {
    case Granularity::Session: return "session";
    case Granularity::Page: return "page";
    case Granularity::Component: return "component";
  }
  return "session";
}

std::vector<std::pair<std::string, std::string>> parse_name_pairs(const json& arr,
                                                                  const std::string& path) {
  if (!arr.is_array()) throw ConfigError(path, "must be an array of [name, name] pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& pair = arr[i];
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
      throw ConfigError(p, "must be a [name, name] pair");
    out.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
  }
  return out;
}

void parse_simulation(const json& sim, AppConfig& cfg) {
  const std::string path = "simulation";
  expect_object(sim, path);
  reject_unknown(sim, path,
                 {"n_users", "ramp_interval", "pages_per_session", "inter_request_delay",
                  "duration", "measurement_window", "seed", "granularity",
                  "think_time_jitter", "page"});
  SimulationConfig& s = cfg.simulation;
  s.n_users = get_int(sim, path, "n_users", s.n_users);
  s.ramp_interval = get_number(sim, path, "ramp_interval", s.ramp_interval);
  s.pages_per_session = get_int(sim, path, "pages_per_session", s.pages_per_session);
  s.inter_request_delay = get_number(sim, path, "inter_request_delay", s.inter_request_delay);
  s.duration = get_number(sim, path, "duration", s.duration);
  s.measurement_window = get_number(sim, path, "measurement_window", s.measurement_window);
  s.seed = get_uint64(sim, path, "seed", s.seed);
  if (sim.contains("granularity"))
    s.granularity = parse_granularity(
        get_string(sim, path, "granularity", "session"), join_path(path, "granularity"));
  s.think_time_jitter = get_bool(sim, path, "think_time_jitter", s.think_time_jitter);
  if (sim.contains("page")) {
    const json& page = sim.at("page");
    const std::string ppath = join_path(path, "page");
    expect_object(page, ppath);
    reject_unknown(page, ppath, {"first_level", "second_per_first", "bytes"});
    s.first_level_components = get_int(page, ppath, "first_level", s.first_level_components);
    s.second_level_per_component =
        get_int(page, ppath, "second_per_first", s.second_level_per_component);
    if (page.contains("bytes")) {
      const json& bytes = page.at("bytes");
      const std::string bpath = join_path(ppath, "bytes");
      expect_object(bytes, bpath);
      reject_unknown(bytes, bpath, {"first_high", "first_low", "second_high", "second_low"});
      s.page_bytes.first_high = get_int64(bytes, bpath, "first_high", s.page_bytes.first_high);
      s.page_bytes.first_low = get_int64(bytes, bpath, "first_low", s.page_bytes.first_low);
      s.page_bytes.second_high =
          get_int64(bytes, bpath, "second_high", s.page_bytes.second_high);
      s.page_bytes.second_low = get_int64(bytes, bpath, "second_low", s.page_bytes.second_low);
    }
  }
}

void parse_controller(const json& ctl, AppConfig& cfg) {
  const std::string path = "controller";
  expect_object(ctl, path);
  reject_unknown(ctl, path, {"enabled", "kp", "ki", "output_min", "output_max", "anti_windup"});
  cfg.controller_enabled = get_bool(ctl, path, "enabled", cfg.controller_enabled);
  cfg.controller.kp = get_number(ctl, path, "kp", cfg.controller.kp);
  cfg.controller.ki = get_number(ctl, path, "ki", cfg.controller.ki);
  cfg.controller.output_min = get_number(ctl, path, "output_min", cfg.controller.output_min);
  cfg.controller.output_max = get_number(ctl, path, "output_max", cfg.controller.output_max);
  cfg.controller.anti_windup = get_bool(ctl, path, "anti_windup", cfg.controller.anti_windup);
}

void parse_setpoints(const json& arr, AppConfig& cfg) {
  if (!arr.is_array()) throw ConfigError("setpoints", "must be an array");
  cfg.setpoints.clear();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "setpoints[" + std::to_string(i) + "]";
    const json& e = arr[i];
    expect_object(e, path);
    reject_unknown(e, path, {"t", "bytes_per_sec"});
    if (!e.contains("t") || !e.contains("bytes_per_sec"))
      throw ConfigError(path, "needs both \"t\" and \"bytes_per_sec\"");
    SetpointEntry entry;
    entry.t = get_number(e, path, "t", 0);
    entry.bytes_per_sec = get_number(e, path, "bytes_per_sec", 0);
    if (!(entry.bytes_per_sec > 0))
      throw ConfigError(join_path(path, "bytes_per_sec"), "must be > 0");
    if (i > 0 && !(entry.t > cfg.setpoints.back().t))
      throw ConfigError(join_path(path, "t"), "schedule times must be strictly increasing");
    cfg.setpoints.push_back(entry);
  }
}

void parse_rules(const json& arr, AppConfig& cfg) {
  if (!arr.is_array()) throw ConfigError("rules", "must be an array");
  cfg.rules.clear();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "rules[" + std::to_string(i) + "]";
    const json& e = arr[i];
    expect_object(e, path);
    reject_unknown(e, path, {"name", "metric", "op", "threshold", "activate", "deactivate"});
    RuleSpec rule;
    rule.name = get_string(e, path, "name", "rule" + std::to_string(i));
    rule.metric = get_string(e, path, "metric", rule.metric);
    rule.op = get_string(e, path, "op", rule.op);
    if (!e.contains("threshold")) throw ConfigError(path, "needs \"threshold\"");
    rule.threshold = get_number(e, path, "threshold", 0);
    for (const char* key : {"activate", "deactivate"}) {
      if (!e.contains(key)) continue;
      const json& names = e.at(key);
      if (!names.is_array()) throw ConfigError(join_path(path, key), "must be an array");
      for (const json& n : names) {
        if (!n.is_string())
          throw ConfigError(join_path(path, key), "must contain layer names");
        (key == std::string("activate") ? rule.activate : rule.deactivate)
            .push_back(n.get<std::string>());
      }
    }
    cfg.rules.push_back(std::move(rule));
  }
}

AppConfig parse_app_config_json(const json& root) {
  expect_object(root, "");
  reject_unknown(root, "", {"simulation", "controller", "setpoints", "rules", "constraints"});
  AppConfig cfg;
  if (root.contains("simulation")) parse_simulation(root.at("simulation"), cfg);
  if (root.contains("controller")) parse_controller(root.at("controller"), cfg);
  if (root.contains("setpoints")) parse_setpoints(root.at("setpoints"), cfg);
  if (root.contains("rules")) parse_rules(root.at("rules"), cfg);
  if (root.contains("constraints")) {
    const json& cons = root.at("constraints");
    expect_object(cons, "constraints");
    reject_unknown(cons, "constraints", {"excludes", "requires"});
    cfg.constraints.excludes.clear();
    cfg.constraints.dependencies.clear();
    if (cons.contains("excludes"))
      cfg.constraints.excludes = parse_name_pairs(cons.at("excludes"), "constraints.excludes");
    if (cons.contains("requires"))
      cfg.constraints.dependencies =
          parse_name_pairs(cons.at("requires"), "constraints.requires");
  }
  cfg.simulation.validate();
  return cfg;
}

json config_json(const AppConfig& cfg) {
  const SimulationConfig& s = cfg.simulation;
  json root;
  root["simulation"] = {
      {"n_users", s.n_users},
      {"ramp_interval", s.ramp_interval},
      {"pages_per_session", s.pages_per_session},
      {"inter_request_delay", s.inter_request_delay},
      {"duration", s.duration},
      {"measurement_window", s.measurement_window},
      {"seed", s.seed},
      {"granularity", granularity_name(s.granularity)},
      {"think_time_jitter", s.think_time_jitter},
      {"page",
       {{"first_level", s.first_level_components},
        {"second_per_first", s.second_level_per_component},
        {"bytes",
         {{"first_high", s.page_bytes.first_high},
          {"first_low", s.page_bytes.first_low},
          {"second_high", s.page_bytes.second_high},
          {"second_low", s.page_bytes.second_low}}}}},
  };
  root["controller"] = {
      {"enabled", cfg.controller_enabled},
      {"kp", cfg.controller.kp},
      {"ki", cfg.controller.ki},
      {"output_min", cfg.controller.output_min},
      {"output_max", cfg.controller.output_max},
      {"anti_windup", cfg.controller.anti_windup},
  };
  root["setpoints"] = json::array();
  for (const SetpointEntry& e : cfg.setpoints)
    root["setpoints"].push_back({{"t", e.t}, {"bytes_per_sec", e.bytes_per_sec}});
  root["rules"] = json::array();
  for (const RuleSpec& r : cfg.rules) {
    json rule = {{"name", r.name}, {"metric", r.metric}, {"op", r.op},
                 {"threshold", r.threshold}};
    rule["activate"] = r.activate;
    rule["deactivate"] = r.deactivate;
    root["rules"].push_back(std::move(rule));
  }
  json excludes = json::array();
  for (const auto& [a, b] : cfg.constraints.excludes) excludes.push_back({a, b});
  json deps = json::array();
  for (const auto& [a, b] : cfg.constraints.dependencies) deps.push_back({a, b});
  root["constraints"] = {{"excludes", std::move(excludes)}, {"requires", std::move(deps)}};
  return root;
}

}  // namespace

AppConfig parse_app_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_app_config_json(root);
}

AppConfig load_app_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  json root;
  try {
    root = json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  if (root.is_object() && root.contains("config")) {
    // Run manifest: the embedded config reproduces the run.
    return parse_app_config_json(root.at("config"));
  }
  return parse_app_config_json(root);
}

std::string app_config_to_json(const AppConfig& cfg) {
  return config_json(cfg).dump(2) + "\n";
}

std::string manifest_json(const AppConfig& cfg, std::string_view subcommand) {
  json root;
  root["tool"] = "layerctx";
  root["version"] = kVersion;
  root["subcommand"] = std::string(subcommand);
  root["seed"] = cfg.simulation.seed;
  root["config"] = config_json(cfg);
  return root.dump(2) + "\n";
}

}  // namespace layerctx
