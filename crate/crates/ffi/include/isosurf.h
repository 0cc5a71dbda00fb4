#ifndef ISOSURF_H
#define ISOSURF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IsosurfStatus {
  ISOSURF_STATUS_OK = 0,
  // A required pointer argument was null.
  ISOSURF_STATUS_NULL = 1,
  // An argument was not valid UTF-8.
  ISOSURF_STATUS_UTF8 = 2,
  // Unknown command, malformed options or input; report exit code 2.
  ISOSURF_STATUS_PARSE = 3,
  // The operation is undefined on the input; report exit code 1.
  ISOSURF_STATUS_DOMAIN = 4,
  // Internal panic; no report is produced.
  ISOSURF_STATUS_PANIC = 5,
} IsosurfStatus;

// Opaque report handle.
typedef struct IsosurfReport IsosurfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Runs `command` (e.g. `"classify-map"`) on the JSON document `input`.
// For `"selftest"`, `input` is `"smoke"` or `"full"` and may be null.
// `options` may be null. On `OK`, `DOMAIN` and report-level `PARSE`
// failures `*out` receives a report; otherwise it is set to null.
//
// # Safety
// String arguments must be null or NUL-terminated; `out` must be writable.
enum IsosurfStatus isosurf_run(const char *command,
                               const char *input,
                               const char *options,
                               struct IsosurfReport **out);

// The report as JSON text; null for a null handle.
//
// # Safety
// `report` must be null or a live handle from `isosurf_run`.
const char *isosurf_report_json(const struct IsosurfReport *report);

// SVG text for commands that draw, else null.
//
// # Safety
// `report` must be null or a live handle from `isosurf_run`.
const char *isosurf_report_svg(const struct IsosurfReport *report);

// CLI exit code of the report (0, 1 or 2); -1 for a null handle.
//
// # Safety
// `report` must be null or a live handle from `isosurf_run`.
int32_t isosurf_report_exit_code(const struct IsosurfReport *report);

// Frees a report; null is ignored.
//
// # Safety
// `report` must be null or a handle from `isosurf_run` not yet freed.
void isosurf_report_free(struct IsosurfReport *report);

// Message of the last failure on this thread; valid until the next call.
const char *isosurf_last_error(void);

// Library version, static storage.
const char *isosurf_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ISOSURF_H */
