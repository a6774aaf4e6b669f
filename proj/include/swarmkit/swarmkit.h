#ifndef SWARMKIT_H
#define SWARMKIT_H

/* C interface to the swarmkit shared library.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Every fallible call returns an swk_status. After a
 * failure, swk_last_error() returns a message for the calling thread, which
 * stays valid until that thread's next failing call. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SWARMKIT_BUILDING)
#    define SWK_API __declspec(dllexport)
#  else
#    define SWK_API __declspec(dllimport)
#  endif
#else
#  define SWK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swk_status {
  SWK_OK = 0,
  SWK_ERR_CONFIG = 1,
  SWK_ERR_NUMERIC = 2,
  SWK_ERR_IO = 3,
  SWK_ERR_DOMAIN = 4,
  SWK_ERR_INDEX = 5,
  SWK_ERR_DEGENERATE_PAIR = 6,
  SWK_ERR_ORACLE_INAPPLICABLE = 7,
  SWK_ERR_INVALID_ARGUMENT = 8,
  SWK_ERR_INTERNAL = 9
} swk_status;

typedef struct swk_config swk_config;
typedef struct swk_trajectory swk_trajectory;

typedef struct swk_metrics {
  double time;
  int has_h;  /* 0 when fewer than two agents are moving */
  double h;
  double r_agg;
  double d_avg;
  double d_min;
  double edge_pos_err_norm;
  double edge_vel_err_norm;
} swk_metrics;

SWK_API const char* swk_version(void);
SWK_API const char* swk_last_error(void);
SWK_API const char* swk_status_name(swk_status status);
SWK_API void swk_string_free(char* s);

/* presets */
SWK_API size_t swk_preset_count(void);
SWK_API const char* swk_preset_name(size_t index);
SWK_API const char* swk_preset_note(size_t index);

/* configs */
SWK_API swk_status swk_config_from_preset(const char* name, swk_config** out);
/* Preset name or path to a JSON scenario file. */
SWK_API swk_status swk_config_resolve(const char* preset_or_path, swk_config** out);
SWK_API swk_status swk_config_from_file(const char* path, swk_config** out);
SWK_API swk_status swk_config_from_json(const char* text, swk_config** out);
SWK_API swk_status swk_config_clone(const swk_config* config, swk_config** out);
/* *out is allocated by the library; release it with swk_string_free. */
SWK_API swk_status swk_config_to_json(const swk_config* config, char** out);
SWK_API swk_status swk_config_save(const swk_config* config, const char* path);
SWK_API swk_status swk_config_validate(const swk_config* config);
SWK_API void swk_config_free(swk_config* config);

SWK_API swk_status swk_config_set_seed(swk_config* config, uint64_t seed);
SWK_API swk_status swk_config_set_dt(swk_config* config, double dt);
SWK_API swk_status swk_config_set_duration(swk_config* config, double duration);
SWK_API swk_status swk_config_get_seed(const swk_config* config, uint64_t* out);
SWK_API swk_status swk_config_get_agent_count(const swk_config* config, size_t* out);
SWK_API swk_status swk_config_get_dim(const swk_config* config, size_t* out);
SWK_API swk_status swk_config_get_step_count(const swk_config* config, size_t* out);

/* runs; threads == 0 is treated as 1 */
SWK_API swk_status swk_run(const swk_config* config, unsigned threads, swk_trajectory** out);
SWK_API void swk_trajectory_free(swk_trajectory* traj);

SWK_API size_t swk_trajectory_snapshot_count(const swk_trajectory* traj);
SWK_API size_t swk_trajectory_agent_count(const swk_trajectory* traj);
SWK_API size_t swk_trajectory_dim(const swk_trajectory* traj);
SWK_API size_t swk_trajectory_event_count(const swk_trajectory* traj);
SWK_API swk_status swk_trajectory_time(const swk_trajectory* traj, size_t snapshot,
                                       double* out);
/* position and velocity each receive swk_trajectory_dim() values; either may
 * be NULL. */
SWK_API swk_status swk_trajectory_state(const swk_trajectory* traj, size_t snapshot,
                                        size_t agent, double* position,
                                        double* velocity);
SWK_API swk_status swk_trajectory_metrics(const swk_trajectory* traj, size_t snapshot,
                                          swk_metrics* out);

SWK_API swk_status swk_trajectory_write_csv(const swk_trajectory* traj, const char* path);
SWK_API swk_status swk_trajectory_write_metrics_csv(const swk_trajectory* traj,
                                                    const char* path);
SWK_API swk_status swk_trajectory_write_events_csv(const swk_trajectory* traj,
                                                   const char* path);
/* trajectory.csv, metrics.csv, events.csv and config.json under dir. */
SWK_API swk_status swk_export_run(const swk_trajectory* traj, const swk_config* config,
                                  const char* dir);

/* sweeps: built-in name or JSON spec file. Writes sweep.csv and, when any cell
 * failed, sweep_errors.csv under out_dir. rows and failed may be NULL. */
SWK_API swk_status swk_sweep_run(const char* spec, unsigned workers, const char* out_dir,
                                 size_t* rows, size_t* failed);
/* Same, but writes the sweep CSV to *csv (release with swk_string_free). */
SWK_API swk_status swk_sweep_csv(const char* spec, unsigned workers, char** csv,
                                 size_t* failed);

/* kernels */
SWK_API swk_status swk_psi_weight(double distance, double delta, size_t count, double alpha,
                                  double* out);
SWK_API swk_status swk_phi_weight(double speed_diff, double eta, size_t count, double beta,
                                  double* out);
SWK_API swk_status swk_rho_weight(double distance, double detection, double sigma_o,
                                  double* out);
SWK_API swk_status swk_saturate_velocity(const double* v, size_t dim, double v_max,
                                         double* out);

#ifdef __cplusplus
}
#endif

#endif /* SWARMKIT_H */
