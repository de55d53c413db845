/* SPDX-License-Identifier: Apache-2.0 */

#ifndef ENRIFACT_H
#define ENRIFACT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define ENRIFACT_API __attribute__((visibility("default")))
#else
#define ENRIFACT_API
#endif

/* Status codes. Engine errors are negative, in the order of the engine's
   error list; ENRIFACT_OK is zero. */
enum enrifact_status {
   ENRIFACT_OK = 0,
   ENRIFACT_E_SYNTAX = -1,
   ENRIFACT_E_SCHEMA = -2,
   ENRIFACT_E_DUPLICATE_ID = -3,
   ENRIFACT_E_DANGLING_ID = -4,
   ENRIFACT_E_MISSING_COMPOSITE = -5,
   ENRIFACT_E_NON_COMPOSABLE_ENTRY = -6,
   ENRIFACT_E_TYPE_MISMATCH = -7,
   ENRIFACT_E_IDENTITY_VIOLATION = -8,
   ENRIFACT_E_ASSOCIATIVITY_VIOLATION = -9,
   ENRIFACT_E_INTERCHANGE_VIOLATION = -10,
   ENRIFACT_E_UNIT_VIOLATION = -11,
   ENRIFACT_E_SYMMETRY_NOT_ISO = -12,
   ENRIFACT_E_CURRY_NOT_BIJECTIVE = -13,
   ENRIFACT_E_NATURALITY_VIOLATION = -14,
   ENRIFACT_E_NOT_COMMUTATIVE = -15,
   ENRIFACT_E_NOT_ASSOCIATIVE = -16,
   ENRIFACT_E_NOT_MONOTONE = -17,
   ENRIFACT_E_NOT_RESIDUATED = -18,
   ENRIFACT_E_NOT_PARTIAL_ORDER = -19,
   ENRIFACT_E_ENRICHED_ASSOC_VIOLATION = -20,
   ENRIFACT_E_ENRICHED_UNIT_VIOLATION = -21,
   ENRIFACT_E_DANGLING_VREF = -22,
   ENRIFACT_E_NOT_ISO = -23,
   ENRIFACT_E_NON_COMMUTING_SQUARE = -24,
   ENRIFACT_E_MALFORMED_DIAGRAM = -25,
   ENRIFACT_E_NOT_A_CONE = -26,
   ENRIFACT_E_FAMILY_NOT_MONO = -27,
   ENRIFACT_E_HYPOTHESIS_FAILED = -28,
   ENRIFACT_E_INDUCTION_FAILURE = -29,
   ENRIFACT_E_INTERSECTION_MISSING = -30,
   ENRIFACT_E_DIRECTIVE = -31,
   ENRIFACT_E_USAGE = -32,
   ENRIFACT_E_NULL_ARGUMENT = -100,
   ENRIFACT_E_INTERNAL = -101
};

typedef struct enrifact_document enrifact_document;
typedef struct enrifact_workspace enrifact_workspace;

ENRIFACT_API const char* enrifact_version(void);
/* Name of a status code, e.g. "DuplicateID"; "Unknown" otherwise. */
ENRIFACT_API const char* enrifact_status_name(int status);
/* Detail message of the last failing call on this thread; "" after success. */
ENRIFACT_API const char* enrifact_last_error(void);

/* Strings returned through char** are owned by the caller. */
ENRIFACT_API void enrifact_string_free(char* s);

ENRIFACT_API int enrifact_document_parse(const char* text, size_t length, enrifact_document** out);
ENRIFACT_API void enrifact_document_free(enrifact_document* doc);
ENRIFACT_API int enrifact_document_serialize(const enrifact_document* doc, char** out);
ENRIFACT_API int enrifact_document_hash(const enrifact_document* doc, char** out);
ENRIFACT_API int enrifact_document_expand(const enrifact_document* doc, enrifact_document** out);
ENRIFACT_API int enrifact_document_opposite(const enrifact_document* doc, enrifact_document** out);

/* Validates the document and prepares the orthogonality caches. */
ENRIFACT_API int enrifact_workspace_new(const enrifact_document* doc, enrifact_workspace** out);
ENRIFACT_API void enrifact_workspace_free(enrifact_workspace* ws);
ENRIFACT_API int enrifact_workspace_counts(const enrifact_workspace* ws, size_t* objects, size_t* morphisms);
/* *holds is 1 when e is (V-)orthogonal to m, 0 otherwise. */
ENRIFACT_API int enrifact_orthogonal(const enrifact_workspace* ws, const char* e, const char* m, int enriched, int* holds);

/* Runs one command given as JSON {"command": ..., "args": {...}}. The report
   (canonical JSON) and the process exit code (0 holds, 1 fails, 2 invalid
   document, 3 usage) are always set when the pointers are non-null. Returns
   ENRIFACT_OK when the command ran, otherwise the status of the error. */
ENRIFACT_API int enrifact_execute(const enrifact_document* doc, const char* request, char** report, int* exit_code);
/* Report for a failure outside a document, e.g. an unreadable file. */
ENRIFACT_API int enrifact_error_report(const char* request, int status, const char* detail, char** report, int* exit_code);
/* format is "json" or "text". */
ENRIFACT_API int enrifact_render(const char* report, const char* format, char** out);
/* SHA-256 of the report without its timing field. */
ENRIFACT_API int enrifact_report_hash(const char* report, char** out);

#ifdef __cplusplus
}
#endif

#endif
