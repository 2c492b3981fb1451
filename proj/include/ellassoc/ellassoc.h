/* C interface to the ellassoc library. Every call returns an ea_status; on a
 * nonzero status ea_last_error() describes the failure for the calling thread.
 * Strings returned through char** belong to the caller and are released with
 * ea_string_free. Handles are immutable after creation and may be shared
 * between threads. */
#ifndef ELLASSOC_ELLASSOC_H
#define ELLASSOC_ELLASSOC_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define EA_API __attribute__((visibility("default")))
#else
#define EA_API
#endif

typedef enum ea_status {
  EA_OK = 0,
  EA_CHECK_FAILED = 1,    /* a verification ran and found a nonzero residual */
  EA_INVALID_ARGUMENT = 2,
  EA_LOAD_ERROR = 3,      /* malformed JSON input; the message names a JSON pointer */
  EA_PARSE_ERROR = 4,     /* malformed expression; the message names a byte offset */
  EA_INTERNAL_ERROR = 5
} ea_status;

typedef struct ea_associator ea_associator;

EA_API const char* ea_version(void);
EA_API const char* ea_last_error(void);
EA_API void ea_string_free(char* s);

/* ---- associators ------------------------------------------------------------ */

/* gauge: 0 = Lyndon ascending, 1 = Lyndon descending. */
EA_API ea_status ea_associator_solve(int max_degree, int even, int gauge, ea_associator** out);
/* LieSeries JSON on {A, B}. warnings (optional) receives a JSON array of strings. */
EA_API ea_status ea_associator_load(const char* json, ea_associator** out, char** warnings);
EA_API ea_status ea_associator_to_json(const ea_associator* phi, char** json);
EA_API int ea_associator_truncation(const ea_associator* phi);
/* Pentagon and both hexagon residuals through max_degree as a JSON report of
 * per-degree nonzero counts. EA_CHECK_FAILED when any count is nonzero. */
EA_API ea_status ea_associator_check(const ea_associator* phi, int max_degree, char** report);
EA_API void ea_associator_release(ea_associator* phi);

/* ---- elliptic pair ---------------------------------------------------------- */

EA_API ea_status ea_elliptic_build(const ea_associator* phi, int max_degree, char** json);
/* identity: 1..4, or 0 for all. The report lists per-degree nonzero counts and
 * wall time per identity. EA_CHECK_FAILED when any residual is nonzero. */
EA_API ea_status ea_elliptic_verify(const ea_associator* phi, int max_degree, int identity, char** report);

/* ---- diagrams ----------------------------------------------------------------- */

/* space: full, R, SR, SRmodH, OSR or FOSR. */
EA_API ea_status ea_diagram_dimension(const char* space, int strands, int degree, int* dim);
/* Image of an expression in U(t_{1,n}) generators (read as a free word
 * combination). normalize: NULL, "phi", "gamma", "beta" or "alpha". */
EA_API ea_status ea_diagram_umap(const char* expr, int strands, int max_degree, int mod_h, const char* normalize,
                                 char** json);
/* Rank comparison of u~ for 2 or 3 strands. EA_CHECK_FAILED unless every
 * degree is injective and surjective. */
EA_API ea_status ea_diagram_isomorphism(int strands, int max_degree, char** report);

/* ---- Lie series and expressions ------------------------------------------------ */

/* bch of two Lie expressions in A, B through max_degree, as LieSeries JSON. */
EA_API ea_status ea_lie_bch(const char* a, const char* b, int max_degree, char** json);
/* Parses in the named algebra ("t1n(2)", "dk(3)", "free(A,B)") and prints the reduced canonical form. */
EA_API ea_status ea_expr_reduce(const char* algebra, const char* expr, int max_degree, char** text);

/* ---- report --------------------------------------------------------------------- */

/* Runs the verification report for a JSON configuration; EA_CHECK_FAILED when
 * some check fails (the report is still returned). */
EA_API ea_status ea_report_run(const char* config_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* ELLASSOC_ELLASSOC_H */
