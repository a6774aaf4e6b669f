#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <limits>
#include <string>
#include <thread>

#include <json.hpp>

#include "lab_json.hpp"
#include "swarmkit/error.hpp"
#include "swarmkit/lab.hpp"

namespace swarmkit::lab {

using nlohmann::json;
using namespace detail;

void SweepSpec::validate() const {
  auto fail = [](const std::string& what) {
    throw_error(ErrorKind::Config, "invalid sweep spec: " + what);
  };
  if (eta.empty()) fail("eta axis is empty");
  if (n.empty()) fail("n axis is empty");
  if (seeds.empty()) fail("at least one seed is required");
  for (double e : eta) {
    if (!std::isfinite(e) || e < 0.0) fail("eta values must be finite and >= 0");
  }
  for (std::size_t k : n) {
    if (k < 2) fail("n values must be >= 2");
  }
  for (double d : delta) {
    if (!std::isfinite(d) || d < 0.0) fail("delta values must be finite and >= 0");
  }
  if (!(breakdown_r_agg > 0.0)) fail("breakdown_r_agg must be > 0");
  for (const auto& [size, hi] : init_upper_by_n) {
    if (!std::isfinite(hi)) fail("init_upper_by_n entries must be finite");
  }
  base.validate();
}

namespace {

std::vector<double> range_eta(int lo, int hi) {
  std::vector<double> out;
  for (int e = lo; e <= hi; ++e) out.push_back(e);
  return out;
}

SweepSpec phase_spec() {
  SweepSpec s;
  s.base = preset("phase-fig5").config;
  s.eta = range_eta(0, 33);
  s.n = {2, 3, 5, 10, 50, 100};
  s.seeds = {1, 2, 3, 4, 5};
  s.init_upper_by_n = {{50, 20.0}, {100, 30.0}, {200, 50.0}, {300, 75.0}};
  return s;
}

SweepSpec spatial_spec() {
  SweepSpec s;
  s.base = preset("spatial-fig7").config;
  s.eta = {3.0, 21.0};
  s.n = {100};
  s.delta = {0.5, 1.0, 1.5, 2.0};
  s.seeds = {1, 2, 3};
  s.init_upper_by_n = {{100, 30.0}};
  return s;
}

template <typename T, typename Get>
std::vector<T> read_axis(const json& j, const char* key, Get get) {
  const json& arr = j[key];
  if (!arr.is_array()) config_error(key, "expected an array");
  std::vector<T> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(static_cast<T>(get(arr[k], std::string(key) + "[" + std::to_string(k) + "]")));
  }
  return out;
}

}  // namespace

std::vector<std::string> builtin_sweep_names() { return {"phase-fig5", "spatial-fig7"}; }

SweepSpec parse_sweep_spec(std::string_view text) {
  const json j = parse_json_text(text, "sweep spec");
  check_keys(j, "sweep spec",
             {"base", "eta", "n", "delta", "seeds", "breakdown_r_agg", "init_upper_by_n"});
  SweepSpec s;
  if (!j.contains("base")) config_error("sweep spec", "missing \"base\"");
  if (j["base"].is_string()) {
    s.base = preset(j["base"].get<std::string>()).config;
  } else {
    s.base = config_from_json(j["base"]);
  }
  if (j.contains("eta")) s.eta = read_axis<double>(j, "eta", get_double);
  if (j.contains("n")) s.n = read_axis<std::size_t>(j, "n", get_u64);
  if (j.contains("delta")) s.delta = read_axis<double>(j, "delta", get_double);
  if (j.contains("seeds")) {
    if (j["seeds"].is_number()) {
      const std::uint64_t count = get_u64(j["seeds"], "seeds");
      for (std::uint64_t k = 1; k <= count; ++k) s.seeds.push_back(k);
    } else {
      s.seeds = read_axis<std::uint64_t>(j, "seeds", get_u64);
    }
  } else {
    s.seeds = {s.base.seed};
  }
  if (j.contains("breakdown_r_agg")) {
    s.breakdown_r_agg = get_double(j["breakdown_r_agg"], "breakdown_r_agg");
  }
  if (j.contains("init_upper_by_n")) {
    const json& m = j["init_upper_by_n"];
    if (!m.is_object()) config_error("init_upper_by_n", "expected an object keyed by n");
    for (const auto& [key, value] : m.items()) {
      std::size_t size = 0;
      try {
        std::size_t used = 0;
        size = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        config_error("init_upper_by_n", "key \"" + key + "\" is not an integer");
      }
      s.init_upper_by_n[size] = get_double(value, "init_upper_by_n." + key);
    }
  }
  s.validate();
  return s;
}

SweepSpec resolve_sweep_spec(std::string_view name_or_path) {
  if (name_or_path == "phase-fig5") return phase_spec();
  if (name_or_path == "spatial-fig7") return spatial_spec();
  const std::filesystem::path path(name_or_path);
  if (!std::filesystem::exists(path)) {
    throw_error(ErrorKind::Config, "sweep spec \"" + std::string(name_or_path) +
                                       "\" is neither a file nor a built-in "
                                       "(phase-fig5, spatial-fig7)");
  }
  const std::string text = read_text(path);
  try {
    return parse_sweep_spec(text);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Config) throw;
    throw_error(ErrorKind::Config, path.string() + ": " + e.what());
  }
}

engine::SimConfig sweep_cell_config(const SweepSpec& spec, double eta, std::size_t n,
                                    std::optional<double> delta, std::uint64_t seed) {
  engine::SimConfig c = spec.base;
  c.n = n;
  c.seed = seed;
  c.interaction.eta = eta;
  if (delta) c.interaction.delta = *delta;
  if (auto it = spec.init_upper_by_n.find(n); it != spec.init_upper_by_n.end()) {
    for (auto& r : c.init_pos_range) r.hi = it->second;
  }
  return c;
}

std::vector<SweepRow> sweep(const SweepSpec& spec, unsigned workers) {
  spec.validate();
  std::vector<SweepRow> rows;
  const std::vector<std::optional<double>> deltas =
      spec.delta.empty() ? std::vector<std::optional<double>>{std::nullopt}
                         : std::vector<std::optional<double>>(spec.delta.begin(),
                                                              spec.delta.end());
  for (double eta : spec.eta) {
    for (std::size_t n : spec.n) {
      for (const auto& delta : deltas) {
        for (std::uint64_t seed : spec.seeds) {
          SweepRow r;
          r.eta = eta;
          r.n = n;
          r.delta = delta;
          r.seed = seed;
          rows.push_back(r);
        }
      }
    }
  }

  auto run_cell = [&](SweepRow& row) {
    try {
      const engine::SimConfig c = sweep_cell_config(spec, row.eta, row.n, row.delta, row.seed);
      const engine::Trajectory t = engine::run(c);
      const auto& last = t.metrics.back();
      row.h_final = last.h;
      row.r_agg_final = last.r_agg;
      row.d_min_overall = std::numeric_limits<double>::infinity();
      for (const auto& m : t.metrics) {
        row.r_agg_max = std::max(row.r_agg_max, m.r_agg);
        row.d_min_overall = std::min(row.d_min_overall, m.d_min);
      }
      row.aggregation_lost = row.r_agg_final > spec.breakdown_r_agg;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  const std::size_t pool = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(rows.size(), 1));
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) run_cell(rows[k]);
  };
  if (pool == 1) {
    drain();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < pool; ++w) threads.emplace_back(drain);
  }
  return rows;
}

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const bool with_delta = !spec.delta.empty();
  std::string out = "eta,n,seed,h_final,r_agg_final,d_min_overall,aggregation_lost";
  if (with_delta) out += ",delta";
  out += "\n";
  for (const auto& r : rows) {
    if (r.error) continue;
    out += format_double(r.eta) + "," + std::to_string(r.n) + "," + std::to_string(r.seed) + ",";
    out += (r.h_final ? format_double(*r.h_final) : std::string()) + ",";
    out += format_double(r.r_agg_final) + "," + format_double(r.d_min_overall) + ",";
    out += r.aggregation_lost ? "true" : "false";
    if (with_delta) out += "," + format_double(r.delta.value_or(spec.base.interaction.delta));
    out += "\n";
  }
  return out;
}

std::string sweep_errors_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const bool with_delta = !spec.delta.empty();
  std::string out = with_delta ? "eta,n,seed,delta,message\n" : "eta,n,seed,message\n";
  for (const auto& r : rows) {
    if (!r.error) continue;
    std::string msg = *r.error;
    std::replace(msg.begin(), msg.end(), '"', '\'');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    out += format_double(r.eta) + "," + std::to_string(r.n) + "," + std::to_string(r.seed) + ",";
    if (with_delta) out += format_double(r.delta.value_or(spec.base.interaction.delta)) + ",";
    out += "\"" + msg + "\"\n";
  }
  return out;
}

}  // namespace swarmkit::lab
