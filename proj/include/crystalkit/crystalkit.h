#ifndef CRYSTALKIT_H
#define CRYSTALKIT_H

/* C interface to the crystalkit core. Handles are opaque; every function
   returns a status and, on failure, leaves a message for ck_last_error(). */

#include <stddef.h>

#if defined(CK_BUILDING_LIBRARY)
#define CK_API __attribute__((visibility("default")))
#else
#define CK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ck_status {
  CK_OK = 0,
  CK_NOT_PRIME = 1,
  CK_REDUCIBLE_MODULUS = 2,
  CK_INCOMPATIBLE_FIELDS = 3,
  CK_MISMATCHED_STRUCTURE = 4,
  CK_NOT_SINGULAR = 5,
  CK_ORACLE_MISMATCH = 6,
  CK_NOT_A_CYCLE = 7,
  CK_BAD_SHAPE = 8,
  CK_FIELD_TOO_SMALL = 9,
  CK_BAD_R = 10,
  CK_INCONSISTENT_INPUT = 11,
  CK_RANK_DEFICIENT_LIE = 12,
  CK_PRECISION_LIMIT = 13,
  CK_PARSE_ERROR = 14,
  CK_USAGE_ERROR = 15,
  CK_INTERNAL_ERROR = 100
} ck_status;

typedef enum ck_format { CK_FORMAT_TSV = 0, CK_FORMAT_JSON = 1 } ck_format;

typedef struct ck_module ck_module;
typedef struct ck_system ck_system;
typedef struct ck_connection ck_connection;
typedef struct ck_report ck_report;

CK_API const char* ck_version(void);
CK_API const char* ck_status_name(ck_status s);
/* Message of the last failure on the calling thread; empty after success. */
CK_API const char* ck_last_error(void);
CK_API void ck_string_free(char* s);

CK_API ck_status ck_module_parse(const char* json, ck_module** out);
CK_API ck_status ck_module_to_json(const ck_module* m, char** out);
CK_API void ck_module_free(ck_module* m);

CK_API ck_status ck_system_parse(const char* json, ck_system** out);
CK_API ck_status ck_system_to_json(const ck_system* s, char** out);
CK_API ck_status ck_system_geometric_count(const ck_system* s, unsigned* m);
CK_API void ck_system_free(ck_system* s);

CK_API ck_status ck_connection_parse(const char* json, ck_connection** out);
CK_API ck_status ck_connection_to_json(const ck_connection* c, char** out);
CK_API void ck_connection_free(ck_connection* c);

/* Zero for p, precision or r means "take it from the module spec or the default". */
CK_API ck_status ck_run_newton(const ck_module* m, ck_report** out);
CK_API ck_status ck_run_valuations(const ck_module* m, unsigned p, ck_report** out);
CK_API ck_status ck_run_example43(unsigned p, unsigned q0, unsigned q1, unsigned n, unsigned m,
                                  ck_report** out);
CK_API ck_status ck_run_embed(const ck_module* m, unsigned p, unsigned precision, unsigned r,
                              ck_report** out);
CK_API ck_status ck_run_solve(const ck_system* s, unsigned ext, ck_report** out);
/* system_json, when non-null, receives the emitted system file. */
CK_API ck_status ck_run_connection(const ck_connection* c, ck_report** out, char** system_json);
CK_API ck_status ck_run_lubin_tate(unsigned r, unsigned p, ck_report** out);

CK_API ck_status ck_report_text(const ck_report* r, ck_format fmt, char** out);
CK_API int ck_report_exit_status(const ck_report* r);
CK_API void ck_report_free(ck_report* r);

#ifdef __cplusplus
}
#endif

#endif
