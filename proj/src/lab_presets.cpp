#include <filesystem>
#include <string>

#include "swarmkit/error.hpp"
#include "swarmkit/lab.hpp"

namespace swarmkit::lab {

namespace {

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

engine::SimConfig planar(std::size_t n, double eta, double duration, double pos_hi = 10.0) {
  engine::SimConfig c;
  c.n = n;
  c.dim = 2;
  c.dt = 0.1;
  c.duration = duration;
  c.seed = 1;
  c.init_pos_range.assign(2, {0.0, pos_hi});
  c.init_vel_range.assign(2, {-1.0, 1.0});
  c.interaction.delta = 1.0;
  c.interaction.eta = eta;
  c.interaction.alpha = 2.0;
  c.interaction.beta = 1.0;
  c.interaction.radius = 10.0;
  c.interaction.v_max = 5.0;
  c.interaction.t_vmax = 1.0;
  return c;
}

engine::SimConfig cluttered() {
  engine::SimConfig c = planar(10, 0.5, 40.0);
  // Neither the speed limit nor the time to reach it is given for this
  // scenario; with s = 5 m/s^2 the group cannot brake in front of the
  // obstacles, so t_vmax is quartered.
  c.interaction.t_vmax = 0.25;
  c.cluttered = true;
  c.target = environment::TargetSpec{vec2(90.0, 90.0), 0.5};
  for (auto [x, y] : {std::pair{25.0, 30.0}, {50.0, 40.0}, {90.0, 80.0}}) {
    c.obstacles.push_back({vec2(x, y), 5.0, 15.0, 3.0});
  }
  return c;
}

engine::SimConfig energy_scenario(bool adaptive, double delta, double eta) {
  engine::SimConfig c = planar(20, eta, 60.0);
  c.interaction.delta = delta;
  c.adaptive = adaptive;
  c.energy = engine::EnergyConfig{80.0, 0.15, 0.015};
  cognition::AdaptationParams a;
  a.delta_min = 0.5;
  a.delta_max = 2.0;
  a.eta_min = 3.0;
  a.eta_max = 15.0;
  a.k_delta = 0.5;
  a.k_eta = 0.5;
  a.e_th = 40.0;
  c.adaptation = a;
  return c;
}

engine::SimConfig cucker_smale() {
  engine::SimConfig c = planar(10, 0.0, 30.0);
  c.model = engine::Model::CuckerSmale;
  c.cucker_smale = core::CuckerSmaleParams{1.0, 1.0, 0.5};
  return c;
}

std::vector<ScenarioPreset> build() {
  std::vector<ScenarioPreset> out;
  out.push_back({"flocking-fig2a", planar(15, 3.0, 30.0),
                 "flocking regime: n=15, eta=3, delta=1, r=10 m, 30 s"});
  out.push_back({"vortexing-fig2b", planar(5, 6.0, 30.0),
                 "vortexing regime: n=5, eta=6, delta=1, r=10 m, 30 s"});
  out.push_back({"swarming-fig2c", planar(15, 12.0, 30.0),
                 "swarming regime: n=15, eta=12, delta=1, r=10 m, 30 s"});
  out.push_back({"phase-fig5", planar(50, 3.0, 30.0, 20.0),
                 "one cell of the eta/n phase sweep: n=50 with the init range "
                 "extended to 20 m; see the phase-fig5 sweep for the full grid"});
  out.push_back({"spatial-fig7", planar(100, 3.0, 30.0, 30.0),
                 "spatial offset study: n=100, eta=3, delta=1, init range 30 m; "
                 "the spatial-fig7 sweep covers eta in {3,21} and several delta"});
  out.push_back({"cluttered-fig6", cluttered(),
                 "navigation among three obstacles toward (90,90): n=10, delta=1, "
                 "eta=0.5, kappa=0.5, c=15, sigma_o=3, 40 s; t_vmax=0.25 s is a choice"});
  out.push_back({"adaptive-fig9", energy_scenario(true, 2.0, 15.0),
                 "energy-driven adaptation: n=20, E0=80, c1=0.15, c2=0.015, k=0.5, "
                 "E_th=40, delta in [0.5,2], eta in [3,15], 60 s"});
  out.push_back({"adaptive-fig9-fixed-swarming", energy_scenario(false, 2.0, 15.0),
                 "adaptive-fig9 with adaptation off at delta=2, eta=15"});
  out.push_back({"adaptive-fig9-fixed-flocking", energy_scenario(false, 0.5, 3.0),
                 "adaptive-fig9 with adaptation off at delta=0.5, eta=3"});
  out.push_back({"cucker-smale-baseline", cucker_smale(),
                 "Cucker-Smale alignment: n=10, K=1, sigma=1, gamma=0.5, 30 s"});
  return out;
}

}  // namespace

const std::vector<ScenarioPreset>& presets() {
  static const std::vector<ScenarioPreset> all = build();
  return all;
}

const ScenarioPreset& preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  std::string list;
  for (const auto& p : presets()) {
    if (!list.empty()) list += ", ";
    list += p.name;
  }
  throw_error(ErrorKind::Config,
              "unknown preset \"" + std::string(name) + "\"; available: " + list);
}

engine::SimConfig resolve_config(std::string_view preset_or_path) {
  for (const auto& p : presets()) {
    if (p.name == preset_or_path) return p.config;
  }
  const std::filesystem::path path(preset_or_path);
  if (std::filesystem::exists(path)) return load_config(path);
  return preset(preset_or_path).config;  // throws with the list of names
}

}  // namespace swarmkit::lab
