/* C interface to the levitated-ellipsoid squeezing simulator.
 *
 * Every function returns a levsq_status. On failure the message (and, for
 * configuration errors, the offending "section.key") is available from
 * levsq_last_error() / levsq_last_error_field() on the calling thread.
 * Strings returned through char** are owned by the caller and released
 * with levsq_free_string(). Angular frequencies are in rad/s. */
#ifndef LEVSQ_LEVSQ_H
#define LEVSQ_LEVSQ_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LEVSQ_API __declspec(dllexport)
#else
#define LEVSQ_API __attribute__((visibility("default")))
#endif

typedef enum levsq_status {
  LEVSQ_OK = 0,
  LEVSQ_ERR_CONFIG = 1,
  LEVSQ_ERR_PHYSICS = 2,
  LEVSQ_ERR_VERIFY = 3,
  LEVSQ_ERR_ARGUMENT = 4,
  LEVSQ_ERR_IO = 5,
  LEVSQ_ERR_INTERNAL = 6
} levsq_status;

/* Omit the generation timestamp from CSV headers. */
#define LEVSQ_FLAG_NO_TIMESTAMP 1u

typedef struct levsq_config levsq_config;
typedef struct levsq_system levsq_system;

typedef struct levsq_params {
  double omega_m;
  double gamma_m;
  double n_bar;
  double g_a;
  double kappa_a;
  double detuning_a;
  double g_b; /* 0 for single-channel systems */
  double kappa_b;
  double detuning_b;
} levsq_params;

typedef struct levsq_spectrum_options {
  int two_mode;   /* nonzero requires a two-channel configuration */
  int has_range;  /* nonzero: use the range below instead of [detection] */
  double omega_min_over_omega_m;
  double omega_max_over_omega_m;
  int n_omega;    /* 0 keeps the configured count */
} levsq_spectrum_options;

LEVSQ_API const char* levsq_last_error(void);
LEVSQ_API const char* levsq_last_error_field(void);
LEVSQ_API void levsq_free_string(char* s);

LEVSQ_API levsq_status levsq_config_load(const char* path, levsq_config** out);
LEVSQ_API levsq_status levsq_config_parse(const char* text, levsq_config** out);
LEVSQ_API void levsq_config_free(levsq_config* config);
LEVSQ_API levsq_status levsq_config_get(const levsq_config* config, const char* path,
                                        double* value);
LEVSQ_API levsq_status levsq_config_set(levsq_config* config, const char* path, double value);
LEVSQ_API levsq_status levsq_config_fingerprint(const levsq_config* config, char** out);
LEVSQ_API levsq_status levsq_config_canonical(const levsq_config* config, char** out);

/* The report is produced for invalid configurations too; the status then
 * says why. */
LEVSQ_API levsq_status levsq_validate_report(const levsq_config* config, char** report);
LEVSQ_API levsq_status levsq_derive_report(const levsq_config* config, char** report);

LEVSQ_API levsq_status levsq_system_build(const levsq_config* config, levsq_system** out);
LEVSQ_API levsq_status levsq_system_from_params(const levsq_params* params, levsq_system** out);
LEVSQ_API void levsq_system_free(levsq_system* system);
LEVSQ_API levsq_status levsq_system_params(const levsq_system* system, levsq_params* out);

LEVSQ_API levsq_status levsq_stability(const levsq_system* system, double* max_real_eig,
                                       int* stable);

/* Spectra need a stable system and fail with LEVSQ_ERR_PHYSICS otherwise. */
LEVSQ_API levsq_status levsq_single_mode(const levsq_system* system, double omega, double* s1,
                                         double* theta_opt);
LEVSQ_API levsq_status levsq_squeezing_at_angle(const levsq_system* system, double omega,
                                                double theta, double* s);
LEVSQ_API levsq_status levsq_two_mode(const levsq_system* system, double omega, double* s_xx,
                                      double* s_yy, double* s2);

LEVSQ_API levsq_status levsq_spectrum_csv(const levsq_config* config,
                                          const levsq_spectrum_options* options,
                                          unsigned flags, char** csv);

/* Runs the sweep described by the spec file. When the spec names an output
 * path the CSV is also written there and *written_path is set (else NULL).
 * workers <= 0 uses the hardware concurrency. */
LEVSQ_API levsq_status levsq_run_sweep(const levsq_config* config, const char* spec_path,
                                       int workers, unsigned flags, char** csv,
                                       char** written_path);

/* Writes the preset CSVs ("all" for every preset) into out_dir and returns
 * the written paths, one per line. */
LEVSQ_API levsq_status levsq_run_preset(const char* name, const char* out_dir, int workers,
                                        unsigned flags, char** manifest);

/* Returns LEVSQ_ERR_VERIFY when any check fails; the report is filled
 * either way. */
LEVSQ_API levsq_status levsq_verify(const levsq_config* config, char** report);

#ifdef __cplusplus
}
#endif

#endif /* LEVSQ_LEVSQ_H */
