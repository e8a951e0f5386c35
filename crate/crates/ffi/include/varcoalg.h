#ifndef VARCOALG_H
#define VARCOALG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VcStatus {
  VC_STATUS_OK = 0,
  /**
   * Elements are not bisimilar, or a check did not pass.
   */
  VC_STATUS_DISTINCT = 1,
  /**
   * Bad input: parse error, unknown variable, null pointer, invalid UTF-8.
   */
  VC_STATUS_INVALID = 2,
  /**
   * A size or depth guard tripped.
   */
  VC_STATUS_RESOURCE = 3,
  /**
   * The library panicked. This is a bug.
   */
  VC_STATUS_INTERNAL = 4,
} VcStatus;

typedef enum VcFormat {
  VC_FORMAT_SET = 0,
  VC_FORMAT_JSON = 1,
} VcFormat;

/**
 * A parsed and solved equation system.
 */
typedef struct VcSystem VcSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and solves a system written in the equation language.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a valid pointer. On success
 * `*out` receives a handle to release with [`vc_system_free`].
 */
enum VcStatus vc_system_parse(const char *src, struct VcSystem **out);

/**
 * # Safety
 * `sys` must come from [`vc_system_parse`] and not be freed twice. Null is ignored.
 */
void vc_system_free(struct VcSystem *sys);

/**
 * Writes the depth-`depth` expansion of `var` to `*out`.
 *
 * # Safety
 * `sys` must be a live handle, `var` a NUL-terminated string and `out` valid.
 */
enum VcStatus vc_solve_expand(const struct VcSystem *sys,
                              const char *var,
                              size_t depth,
                              enum VcFormat format,
                              char **out);

/**
 * Compares two solved variables. Returns `Ok` when they are bisimilar and
 * `Distinct` otherwise, with the first separating depth in `*depth` when
 * `depth` is non-null.
 *
 * # Safety
 * `sys` must be a live handle, `v1`/`v2` NUL-terminated strings.
 */
enum VcStatus vc_equal(const struct VcSystem *sys, const char *v1, const char *v2, size_t *depth);

/**
 * Runs a named built-in check (`prop3` or `lemma31`) and writes its report
 * to `*out`. Returns `Distinct` if the check ran but did not pass.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` valid.
 */
enum VcStatus vc_check(const char *name, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void vc_string_free(char *s);

/**
 * Message for the last failing call on this thread, or null. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *vc_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VARCOALG_H */
