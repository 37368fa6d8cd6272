/* C interface for the tangle response library.
 *
 * All functions returning tangle_status set a thread-local error message
 * retrievable via tangle_last_error() on failure. Pointers handed out by a
 * result object stay valid until the object is freed.
 */
#ifndef TANGLE_C_H
#define TANGLE_C_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tangle_status {
    TANGLE_OK = 0,
    TANGLE_ERR_INVALID = 1,  /* malformed argument */
    TANGLE_ERR_DOMAIN = 2,   /* argument outside the mathematical domain */
    TANGLE_ERR_IO = 3,       /* file could not be written */
    TANGLE_ERR_INTERNAL = 4
} tangle_status;

const char* tangle_version(void);
const char* tangle_last_error(void); /* empty string when no error occurred */

/* --- single-point linear-response report --- */

typedef struct tangle_report {
    double tau;
    double negativity;
    double omega_moduli[4]; /* descending */
    double eta;
} tangle_report;

tangle_status tangle_lrt_report(double alpha, double beta, double gamma, tangle_report* out);

/* --- verification suite --- */

typedef struct tangle_verify_result tangle_verify_result;

typedef struct tangle_check_info {
    const char* name; /* owned by the result object */
    double residual;
    double tolerance;
    int pass;
} tangle_check_info;

tangle_status tangle_verify_run(double tolerance_scale, uint64_t seed,
                                tangle_verify_result** out);
size_t tangle_verify_count(const tangle_verify_result* r);
size_t tangle_verify_failures(const tangle_verify_result* r);
tangle_status tangle_verify_check(const tangle_verify_result* r, size_t index,
                                  tangle_check_info* out);
void tangle_verify_free(tangle_verify_result* r);

/* --- figure sweeps --- */

typedef struct tangle_sweep_config tangle_sweep_config;

tangle_sweep_config* tangle_sweep_config_create(void);
void tangle_sweep_config_free(tangle_sweep_config* cfg);
tangle_status tangle_sweep_config_set_grid(tangle_sweep_config* cfg, int grid);
tangle_status tangle_sweep_config_set_seed(tangle_sweep_config* cfg, uint64_t seed);
tangle_status tangle_sweep_config_set_format(tangle_sweep_config* cfg, const char* format);
tangle_status tangle_sweep_config_set_threads(tangle_sweep_config* cfg, int threads);

/* figure is 1, 2 or 3; path NULL writes to stdout */
tangle_status tangle_write_figure(const tangle_sweep_config* cfg, int figure, const char* path);

/* --- convex-roof oracle vs closed-form ansatz --- */

typedef struct tangle_roof_summary {
    double oracle;
    double ansatz;
    double gap; /* ansatz - oracle; the oracle must not exceed the ansatz by more than 1e-4 */
} tangle_roof_summary;

/* m <= 0 selects ensemble size rank + 2 */
tangle_status tangle_roof_2q(double theta, double q, int m, int restarts, uint64_t seed,
                             tangle_roof_summary* out);
tangle_status tangle_roof_3q(double alpha, double beta, double gamma, double q, int m,
                             int restarts, uint64_t seed, tangle_roof_summary* out);

#ifdef __cplusplus
}
#endif

#endif /* TANGLE_C_H */
