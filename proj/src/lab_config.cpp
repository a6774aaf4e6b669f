#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lab_json.hpp"
#include "swarmkit/error.hpp"
#include "swarmkit/lab.hpp"

namespace swarmkit::lab {

using nlohmann::json;

namespace detail {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  throw_error(ErrorKind::Config, "invalid config at " + where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) config_error(where, "expected an object");
  std::set<std::string> names;
  for (const char* a : allowed) names.insert(a);
  for (const auto& [key, _] : obj.items()) {
    if (!names.contains(key)) config_error(where, "unknown key \"" + key + "\"");
  }
}

double get_double(const json& v, const std::string& where) {
  if (!v.is_number()) config_error(where, "expected a number");
  return v.get<double>();
}

std::uint64_t get_u64(const json& v, const std::string& where) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0)) {
    config_error(where, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

bool get_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) config_error(where, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) config_error(where, "expected a string");
  return v.get<std::string>();
}

Vec get_vec(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() < 2 || v.size() > 3) {
    config_error(where, "expected an array of 2 or 3 numbers");
  }
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    out[static_cast<Eigen::Index>(k)] =
        get_double(v[k], where + "[" + std::to_string(k) + "]");
  }
  return out;
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

}  // namespace detail

namespace {

using namespace detail;

// Either [lo, hi] for every axis or [[lo, hi], ...] with one pair per axis.
std::vector<engine::Range> get_ranges(const json& v, std::size_t dim,
                                      const std::string& where) {
  auto pair = [&](const json& p, const std::string& at) {
    if (!p.is_array() || p.size() != 2) config_error(at, "expected [lo, hi]");
    return engine::Range{get_double(p[0], at + "[0]"), get_double(p[1], at + "[1]")};
  };
  if (!v.is_array() || v.empty()) config_error(where, "expected an interval list");
  if (v[0].is_number()) return std::vector<engine::Range>(dim, pair(v, where));
  std::vector<engine::Range> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(pair(v[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

void read_interaction(const json& j, core::InteractionParams& p, const std::string& where) {
  check_keys(j, where, {"delta", "eta", "alpha", "beta", "radius", "v_max", "t_vmax"});
  if (j.contains("delta")) p.delta = get_double(j["delta"], where + ".delta");
  if (j.contains("eta")) p.eta = get_double(j["eta"], where + ".eta");
  if (j.contains("alpha")) p.alpha = get_double(j["alpha"], where + ".alpha");
  if (j.contains("beta")) p.beta = get_double(j["beta"], where + ".beta");
  if (j.contains("radius")) p.radius = get_double(j["radius"], where + ".radius");
  if (j.contains("v_max")) p.v_max = get_double(j["v_max"], where + ".v_max");
  if (j.contains("t_vmax")) p.t_vmax = get_double(j["t_vmax"], where + ".t_vmax");
}

engine::AgentOverride read_override(const json& j, const std::string& where) {
  check_keys(j, where, {"agent", "delta", "eta", "alpha", "beta", "radius", "v_max",
                        "t_vmax", "kappa", "initial_energy", "c1", "c2"});
  if (!j.contains("agent")) config_error(where, "missing \"agent\"");
  engine::AgentOverride o;
  o.agent = static_cast<std::size_t>(get_u64(j["agent"], where + ".agent"));
  auto opt = [&](const char* key, std::optional<double>& dst) {
    if (j.contains(key)) dst = get_double(j[key], where + "." + key);
  };
  opt("delta", o.delta);
  opt("eta", o.eta);
  opt("alpha", o.alpha);
  opt("beta", o.beta);
  opt("radius", o.radius);
  opt("v_max", o.v_max);
  opt("t_vmax", o.t_vmax);
  opt("kappa", o.kappa);
  opt("initial_energy", o.initial_energy);
  opt("c1", o.c1);
  opt("c2", o.c2);
  return o;
}

engine::Model read_model(const json& v) {
  const std::string s = get_string(v, "model");
  if (s == "minimal") return engine::Model::Minimal;
  if (s == "cucker_smale") return engine::Model::CuckerSmale;
  config_error("model", "expected \"minimal\" or \"cucker_smale\", got \"" + s + "\"");
}

}  // namespace

engine::SimConfig config_from_json(const json& j) {
  check_keys(j, "top level",
             {"n", "dim", "dt", "duration", "seed", "init_pos_range", "init_vel_range",
              "model", "cluttered", "adaptive", "monitor_lyapunov", "interaction",
              "overrides", "target", "obstacles", "energy", "adaptation",
              "cucker_smale"});
  engine::SimConfig c;
  if (j.contains("n")) c.n = static_cast<std::size_t>(get_u64(j["n"], "n"));
  if (j.contains("dim")) c.dim = static_cast<std::size_t>(get_u64(j["dim"], "dim"));
  if (j.contains("dt")) c.dt = get_double(j["dt"], "dt");
  if (j.contains("duration")) c.duration = get_double(j["duration"], "duration");
  if (j.contains("seed")) c.seed = get_u64(j["seed"], "seed");
  c.init_pos_range = j.contains("init_pos_range")
                         ? get_ranges(j["init_pos_range"], c.dim, "init_pos_range")
                         : std::vector<engine::Range>(c.dim, {0.0, 10.0});
  c.init_vel_range = j.contains("init_vel_range")
                         ? get_ranges(j["init_vel_range"], c.dim, "init_vel_range")
                         : std::vector<engine::Range>(c.dim, {-1.0, 1.0});
  if (j.contains("model")) c.model = read_model(j["model"]);
  if (j.contains("cluttered")) c.cluttered = get_bool(j["cluttered"], "cluttered");
  if (j.contains("adaptive")) c.adaptive = get_bool(j["adaptive"], "adaptive");
  if (j.contains("monitor_lyapunov")) {
    c.monitor_lyapunov = get_bool(j["monitor_lyapunov"], "monitor_lyapunov");
  }
  if (j.contains("interaction")) read_interaction(j["interaction"], c.interaction, "interaction");
  if (j.contains("overrides")) {
    const json& arr = j["overrides"];
    if (!arr.is_array()) config_error("overrides", "expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      c.overrides.push_back(read_override(arr[k], "overrides[" + std::to_string(k) + "]"));
    }
  }
  if (j.contains("target") && !j["target"].is_null()) {
    const json& t = j["target"];
    check_keys(t, "target", {"position", "kappa"});
    if (!t.contains("position")) config_error("target", "missing \"position\"");
    environment::TargetSpec spec;
    spec.position = get_vec(t["position"], "target.position");
    if (t.contains("kappa")) spec.kappa = get_double(t["kappa"], "target.kappa");
    c.target = spec;
  }
  if (j.contains("obstacles")) {
    const json& arr = j["obstacles"];
    if (!arr.is_array()) config_error("obstacles", "expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string at = "obstacles[" + std::to_string(k) + "]";
      const json& o = arr[k];
      check_keys(o, at, {"center", "radius", "detection", "sigma_o"});
      if (!o.contains("center")) config_error(at, "missing \"center\"");
      environment::ObstacleSpec spec;
      spec.center = get_vec(o["center"], at + ".center");
      if (o.contains("radius")) spec.radius = get_double(o["radius"], at + ".radius");
      if (o.contains("detection")) spec.detection = get_double(o["detection"], at + ".detection");
      if (o.contains("sigma_o")) spec.sigma_o = get_double(o["sigma_o"], at + ".sigma_o");
      c.obstacles.push_back(spec);
    }
  }
  if (j.contains("energy") && !j["energy"].is_null()) {
    const json& e = j["energy"];
    check_keys(e, "energy", {"initial", "c1", "c2"});
    engine::EnergyConfig spec;
    if (e.contains("initial")) spec.initial = get_double(e["initial"], "energy.initial");
    if (e.contains("c1")) spec.c1 = get_double(e["c1"], "energy.c1");
    if (e.contains("c2")) spec.c2 = get_double(e["c2"], "energy.c2");
    c.energy = spec;
  }
  if (j.contains("adaptation") && !j["adaptation"].is_null()) {
    const json& a = j["adaptation"];
    check_keys(a, "adaptation",
               {"delta_min", "delta_max", "eta_min", "eta_max", "k_delta", "k_eta", "e_th"});
    cognition::AdaptationParams spec;
    auto rd = [&](const char* key, double& dst) {
      if (a.contains(key)) dst = get_double(a[key], std::string("adaptation.") + key);
    };
    rd("delta_min", spec.delta_min);
    rd("delta_max", spec.delta_max);
    rd("eta_min", spec.eta_min);
    rd("eta_max", spec.eta_max);
    rd("k_delta", spec.k_delta);
    rd("k_eta", spec.k_eta);
    rd("e_th", spec.e_th);
    c.adaptation = spec;
  }
  if (j.contains("cucker_smale") && !j["cucker_smale"].is_null()) {
    const json& cs = j["cucker_smale"];
    check_keys(cs, "cucker_smale", {"k_gain", "sigma_cs", "gamma"});
    core::CuckerSmaleParams spec;
    if (cs.contains("k_gain")) spec.k_gain = get_double(cs["k_gain"], "cucker_smale.k_gain");
    if (cs.contains("sigma_cs")) spec.sigma_cs = get_double(cs["sigma_cs"], "cucker_smale.sigma_cs");
    if (cs.contains("gamma")) spec.gamma = get_double(cs["gamma"], "cucker_smale.gamma");
    c.cucker_smale = spec;
  }
  c.validate();
  return c;
}

json config_to_json(const engine::SimConfig& c) {
  json j;
  j["n"] = c.n;
  j["dim"] = c.dim;
  j["dt"] = c.dt;
  j["duration"] = c.duration;
  j["seed"] = c.seed;
  auto ranges = [](const std::vector<engine::Range>& rs) {
    json out = json::array();
    for (const auto& r : rs) out.push_back(json::array({r.lo, r.hi}));
    return out;
  };
  j["init_pos_range"] = ranges(c.init_pos_range);
  j["init_vel_range"] = ranges(c.init_vel_range);
  j["model"] = engine::to_string(c.model);
  j["cluttered"] = c.cluttered;
  j["adaptive"] = c.adaptive;
  j["monitor_lyapunov"] = c.monitor_lyapunov;
  const auto& p = c.interaction;
  j["interaction"] = {{"delta", p.delta}, {"eta", p.eta},       {"alpha", p.alpha},
                      {"beta", p.beta},   {"radius", p.radius}, {"v_max", p.v_max},
                      {"t_vmax", p.t_vmax}};
  json ov = json::array();
  for (const auto& o : c.overrides) {
    json e{{"agent", o.agent}};
    auto put = [&](const char* key, const std::optional<double>& v) {
      if (v) e[key] = *v;
    };
    put("delta", o.delta);
    put("eta", o.eta);
    put("alpha", o.alpha);
    put("beta", o.beta);
    put("radius", o.radius);
    put("v_max", o.v_max);
    put("t_vmax", o.t_vmax);
    put("kappa", o.kappa);
    put("initial_energy", o.initial_energy);
    put("c1", o.c1);
    put("c2", o.c2);
    ov.push_back(std::move(e));
  }
  j["overrides"] = ov;
  if (c.target) {
    j["target"] = {{"position", vec_json(c.target->position)}, {"kappa", c.target->kappa}};
  }
  json obs = json::array();
  for (const auto& o : c.obstacles) {
    obs.push_back({{"center", vec_json(o.center)},
                   {"radius", o.radius},
                   {"detection", o.detection},
                   {"sigma_o", o.sigma_o}});
  }
  j["obstacles"] = obs;
  if (c.energy) {
    j["energy"] = {{"initial", c.energy->initial}, {"c1", c.energy->c1}, {"c2", c.energy->c2}};
  }
  if (c.adaptation) {
    const auto& a = *c.adaptation;
    j["adaptation"] = {{"delta_min", a.delta_min}, {"delta_max", a.delta_max},
                       {"eta_min", a.eta_min},     {"eta_max", a.eta_max},
                       {"k_delta", a.k_delta},     {"k_eta", a.k_eta},
                       {"e_th", a.e_th}};
  }
  if (c.cucker_smale) {
    j["cucker_smale"] = {{"k_gain", c.cucker_smale->k_gain},
                         {"sigma_cs", c.cucker_smale->sigma_cs},
                         {"gamma", c.cucker_smale->gamma}};
  }
  return j;
}

json parse_json_text(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw_error(ErrorKind::Config, what + " is not valid JSON: " + e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorKind::Io, "cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw_error(ErrorKind::Io, "failed reading " + path.string());
  return ss.str();
}

engine::SimConfig parse_config(std::string_view text) {
  return config_from_json(parse_json_text(text, "config"));
}

engine::SimConfig load_config(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return parse_config(text);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Config) throw;
    throw_error(ErrorKind::Config, path.string() + ": " + e.what());
  }
}

std::string dump_config(const engine::SimConfig& config) {
  return config_to_json(config).dump(2) + "\n";
}

void save_config(const engine::SimConfig& config, const std::filesystem::path& path) {
  write_text(path, dump_config(config));
}

}  // namespace swarmkit::lab
