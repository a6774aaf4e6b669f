#include "swarmkit/swarmkit.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <new>
#include <string>

#include "swarmkit/core.hpp"
#include "swarmkit/environment.hpp"
#include "swarmkit/error.hpp"
#include "swarmkit/lab.hpp"

struct swk_config {
  swarmkit::engine::SimConfig value;
};

struct swk_trajectory {
  swarmkit::engine::Trajectory value;
};

namespace {

using swarmkit::ErrorKind;

thread_local std::string last_error;

swk_status fail(swk_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

swk_status status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return SWK_ERR_CONFIG;
    case ErrorKind::Domain: return SWK_ERR_DOMAIN;
    case ErrorKind::IndexOutOfRange: return SWK_ERR_INDEX;
    case ErrorKind::Numeric: return SWK_ERR_NUMERIC;
    case ErrorKind::DegeneratePair: return SWK_ERR_DEGENERATE_PAIR;
    case ErrorKind::OracleInapplicable: return SWK_ERR_ORACLE_INAPPLICABLE;
    case ErrorKind::Io: return SWK_ERR_IO;
  }
  return SWK_ERR_INTERNAL;
}

template <typename Fn>
swk_status guarded(Fn&& fn) {
  try {
    fn();
    return SWK_OK;
  } catch (const swarmkit::Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SWK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SWK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SWK_ERR_INTERNAL, "unknown error");
  }
}

#define SWK_REQUIRE(cond, what) \
  if (!(cond)) return fail(SWK_ERR_INVALID_ARGUMENT, what)

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

swk_status make_config(swk_config** out, auto&& producer) {
  SWK_REQUIRE(out, "out is null");
  *out = nullptr;
  return guarded([&] { *out = new swk_config{producer()}; });
}

}  // namespace

extern "C" {

const char* swk_version(void) { return "0.1.0"; }

const char* swk_last_error(void) { return last_error.c_str(); }

const char* swk_status_name(swk_status status) {
  switch (status) {
    case SWK_OK: return "ok";
    case SWK_ERR_CONFIG: return "config error";
    case SWK_ERR_NUMERIC: return "numeric failure";
    case SWK_ERR_IO: return "I/O failure";
    case SWK_ERR_DOMAIN: return "domain error";
    case SWK_ERR_INDEX: return "index out of range";
    case SWK_ERR_DEGENERATE_PAIR: return "degenerate pair";
    case SWK_ERR_ORACLE_INAPPLICABLE: return "oracle inapplicable";
    case SWK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SWK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void swk_string_free(char* s) { std::free(s); }

size_t swk_preset_count(void) { return swarmkit::lab::presets().size(); }

const char* swk_preset_name(size_t index) {
  const auto& all = swarmkit::lab::presets();
  return index < all.size() ? all[index].name.c_str() : nullptr;
}

const char* swk_preset_note(size_t index) {
  const auto& all = swarmkit::lab::presets();
  return index < all.size() ? all[index].note.c_str() : nullptr;
}

swk_status swk_config_from_preset(const char* name, swk_config** out) {
  SWK_REQUIRE(name, "name is null");
  return make_config(out, [&] { return swarmkit::lab::preset(name).config; });
}

swk_status swk_config_resolve(const char* preset_or_path, swk_config** out) {
  SWK_REQUIRE(preset_or_path, "preset_or_path is null");
  return make_config(out, [&] { return swarmkit::lab::resolve_config(preset_or_path); });
}

swk_status swk_config_from_file(const char* path, swk_config** out) {
  SWK_REQUIRE(path, "path is null");
  return make_config(out, [&] { return swarmkit::lab::load_config(path); });
}

swk_status swk_config_from_json(const char* text, swk_config** out) {
  SWK_REQUIRE(text, "text is null");
  return make_config(out, [&] { return swarmkit::lab::parse_config(text); });
}

swk_status swk_config_clone(const swk_config* config, swk_config** out) {
  SWK_REQUIRE(config, "config is null");
  return make_config(out, [&] { return config->value; });
}

swk_status swk_config_to_json(const swk_config* config, char** out) {
  SWK_REQUIRE(config, "config is null");
  SWK_REQUIRE(out, "out is null");
  *out = nullptr;
  return guarded([&] { *out = copy_string(swarmkit::lab::dump_config(config->value)); });
}

swk_status swk_config_save(const swk_config* config, const char* path) {
  SWK_REQUIRE(config, "config is null");
  SWK_REQUIRE(path, "path is null");
  return guarded([&] { swarmkit::lab::save_config(config->value, path); });
}

swk_status swk_config_validate(const swk_config* config) {
  SWK_REQUIRE(config, "config is null");
  return guarded([&] { config->value.validate(); });
}

void swk_config_free(swk_config* config) { delete config; }

swk_status swk_config_set_seed(swk_config* config, uint64_t seed) {
  SWK_REQUIRE(config, "config is null");
  config->value.seed = seed;
  return SWK_OK;
}

swk_status swk_config_set_dt(swk_config* config, double dt) {
  SWK_REQUIRE(config, "config is null");
  return guarded([&] {
    auto c = config->value;
    c.dt = dt;
    c.validate();
    config->value = std::move(c);
  });
}

swk_status swk_config_set_duration(swk_config* config, double duration) {
  SWK_REQUIRE(config, "config is null");
  return guarded([&] {
    auto c = config->value;
    c.duration = duration;
    c.validate();
    config->value = std::move(c);
  });
}

swk_status swk_config_get_seed(const swk_config* config, uint64_t* out) {
  SWK_REQUIRE(config && out, "null argument");
  *out = config->value.seed;
  return SWK_OK;
}

swk_status swk_config_get_agent_count(const swk_config* config, size_t* out) {
  SWK_REQUIRE(config && out, "null argument");
  *out = config->value.n;
  return SWK_OK;
}

swk_status swk_config_get_dim(const swk_config* config, size_t* out) {
  SWK_REQUIRE(config && out, "null argument");
  *out = config->value.dim;
  return SWK_OK;
}

swk_status swk_config_get_step_count(const swk_config* config, size_t* out) {
  SWK_REQUIRE(config && out, "null argument");
  *out = config->value.step_count();
  return SWK_OK;
}

swk_status swk_run(const swk_config* config, unsigned threads, swk_trajectory** out) {
  SWK_REQUIRE(config, "config is null");
  SWK_REQUIRE(out, "out is null");
  *out = nullptr;
  return guarded([&] {
    swarmkit::engine::RunOptions opts;
    opts.threads = threads == 0 ? 1 : threads;
    *out = new swk_trajectory{swarmkit::engine::run(config->value, opts)};
  });
}

void swk_trajectory_free(swk_trajectory* traj) { delete traj; }

size_t swk_trajectory_snapshot_count(const swk_trajectory* traj) {
  return traj ? traj->value.snapshots.size() : 0;
}

size_t swk_trajectory_agent_count(const swk_trajectory* traj) {
  return traj ? traj->value.n : 0;
}

size_t swk_trajectory_dim(const swk_trajectory* traj) { return traj ? traj->value.dim : 0; }

size_t swk_trajectory_event_count(const swk_trajectory* traj) {
  return traj ? traj->value.events.size() : 0;
}

swk_status swk_trajectory_time(const swk_trajectory* traj, size_t snapshot, double* out) {
  SWK_REQUIRE(traj && out, "null argument");
  if (snapshot >= traj->value.snapshots.size()) {
    return fail(SWK_ERR_INDEX, "snapshot " + std::to_string(snapshot) + " out of range");
  }
  *out = traj->value.snapshots[snapshot].time;
  return SWK_OK;
}

swk_status swk_trajectory_state(const swk_trajectory* traj, size_t snapshot, size_t agent,
                                double* position, double* velocity) {
  SWK_REQUIRE(traj, "traj is null");
  const auto& snaps = traj->value.snapshots;
  if (snapshot >= snaps.size()) {
    return fail(SWK_ERR_INDEX, "snapshot " + std::to_string(snapshot) + " out of range");
  }
  if (agent >= snaps[snapshot].agents.size()) {
    return fail(SWK_ERR_INDEX, "agent " + std::to_string(agent) + " out of range");
  }
  const auto& s = snaps[snapshot].agents[agent];
  for (Eigen::Index k = 0; k < s.position.size(); ++k) {
    if (position) position[k] = s.position[k];
    if (velocity) velocity[k] = s.velocity[k];
  }
  return SWK_OK;
}

swk_status swk_trajectory_metrics(const swk_trajectory* traj, size_t snapshot,
                                  swk_metrics* out) {
  SWK_REQUIRE(traj && out, "null argument");
  if (snapshot >= traj->value.metrics.size()) {
    return fail(SWK_ERR_INDEX, "snapshot " + std::to_string(snapshot) + " out of range");
  }
  const auto& m = traj->value.metrics[snapshot];
  out->time = m.time;
  out->has_h = m.h.has_value() ? 1 : 0;
  out->h = m.h.value_or(0.0);
  out->r_agg = m.r_agg;
  out->d_avg = m.d_avg;
  out->d_min = m.d_min;
  out->edge_pos_err_norm = m.edge_pos_err_norm;
  out->edge_vel_err_norm = m.edge_vel_err_norm;
  return SWK_OK;
}

swk_status swk_trajectory_write_csv(const swk_trajectory* traj, const char* path) {
  SWK_REQUIRE(traj && path, "null argument");
  return guarded(
      [&] { swarmkit::lab::write_text(path, swarmkit::lab::trajectory_csv(traj->value)); });
}

swk_status swk_trajectory_write_metrics_csv(const swk_trajectory* traj, const char* path) {
  SWK_REQUIRE(traj && path, "null argument");
  return guarded(
      [&] { swarmkit::lab::write_text(path, swarmkit::lab::metrics_csv(traj->value)); });
}

swk_status swk_trajectory_write_events_csv(const swk_trajectory* traj, const char* path) {
  SWK_REQUIRE(traj && path, "null argument");
  return guarded(
      [&] { swarmkit::lab::write_text(path, swarmkit::lab::events_csv(traj->value)); });
}

swk_status swk_export_run(const swk_trajectory* traj, const swk_config* config,
                          const char* dir) {
  SWK_REQUIRE(traj && config && dir, "null argument");
  return guarded([&] { swarmkit::lab::export_run(traj->value, config->value, dir); });
}

swk_status swk_sweep_run(const char* spec, unsigned workers, const char* out_dir,
                         size_t* rows, size_t* failed) {
  SWK_REQUIRE(spec && out_dir, "null argument");
  return guarded([&] {
    const auto s = swarmkit::lab::resolve_sweep_spec(spec);
    const auto result = swarmkit::lab::sweep(s, workers == 0 ? 1 : workers);
    std::size_t bad = 0;
    for (const auto& r : result) bad += r.error ? 1 : 0;
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      swarmkit::throw_error(ErrorKind::Io,
                            "cannot create directory " + dir.string() + ": " + ec.message());
    }
    swarmkit::lab::write_text(dir / "sweep.csv", swarmkit::lab::sweep_csv(s, result));
    if (bad > 0) {
      swarmkit::lab::write_text(dir / "sweep_errors.csv",
                                swarmkit::lab::sweep_errors_csv(s, result));
    }
    if (rows) *rows = result.size() - bad;
    if (failed) *failed = bad;
  });
}

swk_status swk_sweep_csv(const char* spec, unsigned workers, char** csv, size_t* failed) {
  SWK_REQUIRE(spec && csv, "null argument");
  *csv = nullptr;
  return guarded([&] {
    const auto s = swarmkit::lab::resolve_sweep_spec(spec);
    const auto result = swarmkit::lab::sweep(s, workers == 0 ? 1 : workers);
    std::size_t bad = 0;
    for (const auto& r : result) bad += r.error ? 1 : 0;
    *csv = copy_string(swarmkit::lab::sweep_csv(s, result));
    if (failed) *failed = bad;
  });
}

swk_status swk_psi_weight(double distance, double delta, size_t count, double alpha,
                          double* out) {
  SWK_REQUIRE(out, "out is null");
  return guarded([&] { *out = swarmkit::core::psi_weight(distance, delta, count, alpha); });
}

swk_status swk_phi_weight(double speed_diff, double eta, size_t count, double beta,
                          double* out) {
  SWK_REQUIRE(out, "out is null");
  return guarded([&] { *out = swarmkit::core::phi_weight(speed_diff, eta, count, beta); });
}

swk_status swk_rho_weight(double distance, double detection, double sigma_o, double* out) {
  SWK_REQUIRE(out, "out is null");
  return guarded(
      [&] { *out = swarmkit::environment::rho_weight(distance, detection, sigma_o); });
}

swk_status swk_saturate_velocity(const double* v, size_t dim, double v_max, double* out) {
  SWK_REQUIRE(v && out, "null argument");
  SWK_REQUIRE(dim == 2 || dim == 3, "dim must be 2 or 3");
  return guarded([&] {
    swarmkit::Vec in(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) in[static_cast<Eigen::Index>(k)] = v[k];
    const swarmkit::Vec r = swarmkit::core::saturate_velocity(in, v_max);
    for (std::size_t k = 0; k < dim; ++k) out[k] = r[static_cast<Eigen::Index>(k)];
  });
}

}  // extern "C"
