#include <doctest.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include "swarmkit/error.hpp"
#include "swarmkit/lab.hpp"

using namespace swarmkit;
using namespace swarmkit::lab;

namespace {

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Config;
}

std::filesystem::path scratch_dir(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / ("swarmkit_test_" + std::string(name));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("presets") {
  CHECK(preset("flocking-fig2a").config.n == 15);
  CHECK(preset("flocking-fig2a").config.interaction.eta == 3.0);
  CHECK(preset("vortexing-fig2b").config.n == 5);
  CHECK(preset("vortexing-fig2b").config.interaction.eta == 6.0);
  CHECK(preset("swarming-fig2c").config.interaction.eta == 12.0);
  const auto& clutter = preset("cluttered-fig6").config;
  REQUIRE(clutter.target.has_value());
  CHECK(clutter.target->kappa == 0.5);
  CHECK(clutter.obstacles.size() == 3);
  CHECK(clutter.duration == 40.0);
  CHECK(clutter.interaction.eta == 0.5);
  CHECK(preset("adaptive-fig9").config.adaptation->e_th == 40.0);
  CHECK(preset("adaptive-fig9").config.n == 20);
  CHECK(preset("spatial-fig7").config.n == 100);
  CHECK(preset("cucker-smale-baseline").config.model == engine::Model::CuckerSmale);

  try {
    preset("no-such-thing");
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    const std::string msg = e.what();
    for (const auto& p : presets()) CHECK(msg.find(p.name) != std::string::npos);
  }
}

TEST_CASE("every preset round-trips through the config format") {
  for (const auto& p : presets()) {
    CAPTURE(p.name);
    const std::string text = dump_config(p.config);
    const engine::SimConfig back = parse_config(text);
    CHECK(dump_config(back) == text);

    engine::SimConfig a = p.config, b = back;
    a.duration = b.duration = 2.0;
    a.n = b.n = std::min<std::size_t>(a.n, 20);
    CHECK(trajectory_csv(engine::run(a)) == trajectory_csv(engine::run(b)));
  }
}

TEST_CASE("every preset runs without numeric errors") {
  for (const auto& p : presets()) {
    CAPTURE(p.name);
    CHECK_NOTHROW(engine::run(p.config));
  }
}

TEST_CASE("config parsing is strict") {
  CHECK(kind_of([] { parse_config(R"({"n": 5, "speed": 3})"); }) == ErrorKind::Config);
  CHECK(kind_of([] { parse_config(R"({"interaction": {"delt": 1}})"); }) == ErrorKind::Config);
  CHECK(kind_of([] { parse_config(R"({"n": "five"})"); }) == ErrorKind::Config);
  CHECK(kind_of([] { parse_config(R"({"n": -3})"); }) == ErrorKind::Config);
  CHECK(kind_of([] { parse_config(R"({"n": 1})"); }) == ErrorKind::Config);
  CHECK(kind_of([] { parse_config("{not json"); }) == ErrorKind::Config);
  CHECK(kind_of([] { parse_config(R"({"model": "vicsek"})"); }) == ErrorKind::Config);
  CHECK(kind_of([] { parse_config(R"({"init_pos_range": [5, 1]})"); }) == ErrorKind::Config);

  const auto c = parse_config(R"({"n": 7, "dim": 3, "init_pos_range": [0, 4],
                                  "overrides": [{"agent": 2, "eta": 9}]})");
  CHECK(c.n == 7);
  CHECK(c.init_pos_range.size() == 3);
  CHECK(c.init_pos_range[2].hi == 4.0);
  CHECK(c.agent_params()[2].eta == 9.0);
  CHECK(c.agent_params()[1].eta == 0.0);
}

TEST_CASE("file I/O errors carry the path") {
  const std::string bad = "/nonexistent-dir/swarmkit/config.json";
  try {
    load_config(bad);
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
    CHECK(std::string(e.what()).find(bad) != std::string::npos);
  }
  try {
    write_text(bad, "x");
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
    CHECK(std::string(e.what()).find(bad) != std::string::npos);
  }
}

TEST_CASE("doubles are written in shortest round-trip form") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 10000; ++k) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(30.0) == "30");
}

TEST_CASE("export") {
  const engine::SimConfig c = preset("flocking-fig2a").config;
  const engine::Trajectory t = engine::run(c);
  const std::string traj = trajectory_csv(t);
  CHECK(count_lines(traj) == 301 * 15 + 1);
  CHECK(first_line(traj) == "t,agent_id,px,py,vx,vy");
  const std::string metrics = metrics_csv(t);
  CHECK(count_lines(metrics) == t.snapshots.size() + 1);
  CHECK(first_line(metrics) ==
        "t,h,r_agg,d_avg,d_min,edge_pos_err_x,edge_pos_err_y,edge_vel_err_x,edge_vel_err_y,"
        "edge_pos_err_norm,edge_vel_err_norm,lyapunov_v,lyapunov_v_dot");
  CHECK(traj.find('\r') == std::string::npos);

  const engine::Trajectory adaptive = engine::run([] {
    auto a = preset("adaptive-fig9").config;
    a.duration = 1.0;
    return a;
  }());
  CHECK(first_line(trajectory_csv(adaptive)) == "t,agent_id,px,py,vx,vy,delta,eta,energy");

  const auto dir = scratch_dir("export");
  export_run(t, c, dir);
  for (const char* f : {"trajectory.csv", "metrics.csv", "events.csv", "config.json"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  const engine::SimConfig echo = load_config(dir / "config.json");
  CHECK(trajectory_csv(engine::run(echo)) == traj);
  std::filesystem::remove_all(dir);
}

TEST_CASE("sweep cardinality and schema") {
  SweepSpec one;
  one.base = preset("flocking-fig2a").config;
  one.base.duration = 2.0;
  one.eta = {3.0};
  one.n = {15};
  one.seeds = {1};
  const auto rows = sweep(one);
  CHECK(rows.size() == 1);
  const std::string csv = sweep_csv(one, rows);
  CHECK(first_line(csv) == "eta,n,seed,h_final,r_agg_final,d_min_overall,aggregation_lost");
  CHECK(count_lines(csv) == 2);

  SweepSpec grid = one;
  grid.eta = {3.0, 13.0};
  grid.n = {50};
  grid.seeds = {1, 2, 3, 4, 5};
  grid.init_upper_by_n = {{50, 20.0}};
  const auto grid_rows = sweep(grid, 3);
  CHECK(grid_rows.size() == 10);
  CHECK(sweep_csv(grid, grid_rows) == sweep_csv(grid, sweep(grid, 1)));

  const auto cell = sweep_cell_config(grid, 13.0, 50, std::nullopt, 4);
  CHECK(cell.init_pos_range[0].hi == 20.0);
  CHECK(cell.interaction.eta == 13.0);
  CHECK(cell.seed == 4);

  SweepSpec with_delta = one;
  with_delta.delta = {0.5, 1.0};
  const auto drows = sweep(with_delta);
  CHECK(drows.size() == 2);
  CHECK(first_line(sweep_csv(with_delta, drows)) ==
        "eta,n,seed,h_final,r_agg_final,d_min_overall,aggregation_lost,delta");
}

TEST_CASE("failed sweep cells are recorded and the sweep continues") {
  SweepSpec s;
  s.base = preset("flocking-fig2a").config;
  s.base.duration = 1.0;
  s.base.overrides.push_back({.agent = 5, .eta = 1.0});
  s.eta = {3.0};
  s.n = {3, 10};
  s.seeds = {1};
  const auto rows = sweep(s, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].error.has_value());
  CHECK_FALSE(rows[1].error.has_value());
  CHECK(count_lines(sweep_csv(s, rows)) == 2);
  CHECK(count_lines(sweep_errors_csv(s, rows)) == 2);
}

TEST_CASE("sweep specs") {
  const SweepSpec phase = resolve_sweep_spec("phase-fig5");
  CHECK(phase.eta.size() == 34);
  CHECK(phase.n == std::vector<std::size_t>{2, 3, 5, 10, 50, 100});
  CHECK(phase.init_upper_by_n.at(300) == 75.0);
  const SweepSpec spatial = resolve_sweep_spec("spatial-fig7");
  CHECK(spatial.delta.size() >= 2);

  const SweepSpec parsed = parse_sweep_spec(R"({"base": "flocking-fig2a", "eta": [1, 2],
      "n": [4], "seeds": 3, "init_upper_by_n": {"4": 7.5}})");
  CHECK(parsed.seeds == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(parsed.init_upper_by_n.at(4) == 7.5);

  CHECK(kind_of([] { parse_sweep_spec(R"({"base": "flocking-fig2a", "eta": [], "n": [4]})"); }) ==
        ErrorKind::Config);
  CHECK(kind_of([] { parse_sweep_spec(R"({"base": "flocking-fig2a", "etas": [1]})"); }) ==
        ErrorKind::Config);
  CHECK(kind_of([] { resolve_sweep_spec("no-such-sweep"); }) == ErrorKind::Config);
}
