#ifndef ENTCONE_H
#define ENTCONE_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EntconeStatus {
  ENTCONE_STATUS_OK = 0,
  ENTCONE_STATUS_NULL_POINTER = 1,
  ENTCONE_STATUS_INVALID_UTF8 = 2,
  ENTCONE_STATUS_PARSE = 3,
  ENTCONE_STATUS_INVALID_ARGUMENT = 4,
  ENTCONE_STATUS_DIMENSION_MISMATCH = 5,
  ENTCONE_STATUS_NON_POINTED_CONE = 6,
  ENTCONE_STATUS_MODEL_INVALID = 7,
  ENTCONE_STATUS_PANIC = 99,
} EntconeStatus;

typedef enum EntconeVerdict {
  ENTCONE_VERDICT_EXTREME = 0,
  ENTCONE_VERDICT_NOT_EXTREME = 1,
  ENTCONE_VERDICT_OUTSIDE = 2,
} EntconeVerdict;

typedef struct EntconeHRep EntconeHRep;

typedef struct EntconeModel EntconeModel;

typedef struct EntconeVRep EntconeVRep;

typedef struct EntconeVector EntconeVector;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *entcone_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void entcone_string_free(char *s);

/**
 * Parses the entropy-vector text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum EntconeStatus entcone_vector_parse(const char *text, struct EntconeVector **out);

/**
 * # Safety
 * `v` must come from this library or be NULL.
 */
void entcone_vector_free(struct EntconeVector *v);

/**
 * Party count `N`, or 0 for NULL.
 *
 * # Safety
 * `v` must be a live handle or NULL.
 */
size_t entcone_vector_n(const struct EntconeVector *v);

/**
 * # Safety
 * `v` must be a live handle; `out` must be writable.
 */
enum EntconeStatus entcone_vector_to_text(const struct EntconeVector *v, char **out);

/**
 * Entropy vector of `bell`, `ghz` or `ame4` over `parties[0..len]`.
 *
 * # Safety
 * `kind` must be a NUL-terminated string; `parties` must point to `len`
 * values (or be NULL with `len == 0`); `out` must be writable.
 */
enum EntconeStatus entcone_state_vector(const char *kind,
                                        const size_t *parties,
                                        size_t len,
                                        size_t n,
                                        struct EntconeVector **out);

/**
 * Parses the JSON model format.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum EntconeStatus entcone_model_parse(const char *json, struct EntconeModel **out);

/**
 * Built-in model `fig1`, `fig2` or `fig3`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum EntconeStatus entcone_model_fixture(const char *name, struct EntconeModel **out);

/**
 * # Safety
 * `m` must come from this library or be NULL.
 */
void entcone_model_free(struct EntconeModel *m);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum EntconeStatus entcone_model_entropy_vector(const struct EntconeModel *m,
                                                struct EntconeVector **out);

/**
 * H-representation of `sa`, `ssa`, `ingleton`, `poly` or `lambda4`.
 *
 * # Safety
 * `family` must be a NUL-terminated string; `out` must be writable.
 */
enum EntconeStatus entcone_hrep_family(const char *family, size_t n, struct EntconeHRep **out);

/**
 * # Safety
 * `h` must come from this library or be NULL.
 */
void entcone_hrep_free(struct EntconeHRep *h);

/**
 * Number of inequalities, or 0 for NULL.
 *
 * # Safety
 * `h` must be a live handle or NULL.
 */
size_t entcone_hrep_len(const struct EntconeHRep *h);

/**
 * Extreme rays of the cone.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum EntconeStatus entcone_double_description(const struct EntconeHRep *h,
                                              struct EntconeVRep **out);

/**
 * Parses the V-representation text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum EntconeStatus entcone_vrep_parse(const char *text, struct EntconeVRep **out);

/**
 * # Safety
 * `v` must come from this library or be NULL.
 */
void entcone_vrep_free(struct EntconeVRep *v);

/**
 * Number of rays, or 0 for NULL.
 *
 * # Safety
 * `v` must be a live handle or NULL.
 */
size_t entcone_vrep_len(const struct EntconeVRep *v);

/**
 * Number of orbits under party permutations, or 0 for NULL.
 *
 * # Safety
 * `v` must be a live handle or NULL.
 */
size_t entcone_vrep_orbit_count(const struct EntconeVRep *v);

/**
 * # Safety
 * `v` must be a live handle; `out` must be writable.
 */
enum EntconeStatus entcone_vrep_to_text(const struct EntconeVRep *v, char **out);

/**
 * Extremality of `v` in the cone `h`. `rank` receives the rank of the
 * saturated inequalities; `certificate_json`, if not NULL, receives the
 * full certificate.
 *
 * # Safety
 * `v` and `h` must be live handles; `verdict` and `rank` must be writable;
 * `certificate_json` must be writable or NULL.
 */
enum EntconeStatus entcone_is_extreme_ray(const struct EntconeVector *v,
                                          const struct EntconeHRep *h,
                                          enum EntconeVerdict *verdict,
                                          size_t *rank,
                                          char **certificate_json);

/**
 * Pulls `v` back along the comma-separated map `map` onto `n_to` parties.
 *
 * # Safety
 * `map` must be a NUL-terminated string; `v` a live handle; `out` writable.
 */
enum EntconeStatus entcone_pullback(const char *map,
                                    const struct EntconeVector *v,
                                    size_t n_to,
                                    struct EntconeVector **out);

/**
 * Runs `n2`, `n3-chain` or `n4-lambda`. `passed` receives the overall
 * verdict and `report_json`, if not NULL, the JSON report.
 *
 * # Safety
 * `scenario` must be a NUL-terminated string; `passed` must be writable;
 * `report_json` must be writable or NULL.
 */
enum EntconeStatus entcone_reproduce(const char *scenario,
                                     bool long_,
                                     bool *passed,
                                     char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENTCONE_H */
