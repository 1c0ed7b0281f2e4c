/* edgecache shared-library interface.
 *
 * All state lives behind opaque handles; every call reports an ec_status and
 * a failed call leaves a human-readable message in ec_last_error() (thread
 * local). Handles are created by ec_*_create/load and released with the
 * matching ec_*_free.
 */
#ifndef EDGECACHE_H
#define EDGECACHE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ec_status {
  EC_OK = 0,
  EC_ERR_CONFIG = 1,   /* bad config file, unknown key, failed validation */
  EC_ERR_ARGUMENT = 2, /* invalid argument to a call */
  EC_ERR_IO = 3,       /* file could not be written or read */
  EC_ERR_RUNTIME = 4   /* anything else */
} ec_status;

typedef struct ec_config ec_config;
typedef struct ec_sweep ec_sweep;

const char* ec_status_str(ec_status status);

/* Message describing the most recent failure on this thread; never NULL. */
const char* ec_last_error(void);

/* --- configuration ------------------------------------------------------ */

ec_status ec_config_create(ec_config** out);
ec_status ec_config_load(const char* path, ec_config** out);
ec_status ec_config_set(ec_config* cfg, const char* key, const char* value);
ec_status ec_config_validate(const ec_config* cfg);
void ec_config_free(ec_config* cfg);

/* --- experiments ---------------------------------------------------------*/

/* Runs one realization and writes per-policy satisfaction ratio and backhaul
 * load into eta[4] / rho[4], indexed ground truth, random, cf, tl. Entries
 * for policies not enabled in the config are set to -1. */
ec_status ec_realization_run(const ec_config* cfg, uint64_t seed, double eta[4], double rho[4]);

typedef void (*ec_progress_fn)(uint64_t done, uint64_t total, void* user);

/* Runs a sweep over the given axis (storage, beta, lambda, backhaul or
 * correspondence). grid/grid_len may be NULL/0 to use the config's grid or
 * the 13-point axis default. progress may be NULL. */
ec_status ec_sweep_run(const ec_config* cfg, const char* axis, const double* grid,
                       size_t grid_len, ec_progress_fn progress, void* user, ec_sweep** out);

ec_status ec_sweep_write_csv(const ec_sweep* sweep, const char* path);
ec_status ec_sweep_write_svg(const ec_sweep* sweep, const char* path);
void ec_sweep_free(ec_sweep* sweep);

/* --- verification oracles ------------------------------------------------*/

/* suite is "crp", "gradient" or "placement"; returns the number of
 * brute-force checks run and how many failed. */
ec_status ec_oracle_run(const char* suite, int* checks, int* failures);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EDGECACHE_H */
