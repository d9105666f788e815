#ifndef SQ2_CAPI_H
#define SQ2_CAPI_H

/* C interface of the shared library. All functions return a status code;
 * output strings are heap-allocated and must be released with
 * sq2_string_free, handles with the matching _free function. On failure the
 * message is available through sq2_last_error until the next call on the
 * same thread. */

#ifdef __cplusplus
extern "C" {
#endif

#define SQ2_OK 0
#define SQ2_VERIFY_FAILED 1   /* checks ran, at least one failed */
#define SQ2_BAD_ARGUMENT 2    /* invalid flag value, precondition violated */
#define SQ2_PARSE_ERROR 3     /* malformed expression or file */

const char* sq2_last_error(void);
void sq2_string_free(char* s);

/* Steenrod algebra elements. `expr` uses the "Sq3 Sq1 + Sq4" syntax. */
int sq2_adem(const char* expr, char** out);
int sq2_antipode(int k, char** out);

/* Graded modules, JSON format as documented in the library headers. */
typedef struct sq2_module sq2_module;
int sq2_module_parse(const char* json, sq2_module** out);
void sq2_module_free(sq2_module* m);
int sq2_module_to_json(const sq2_module* m, char** out);
/* SQ2_OK when the action tables satisfy all relations, SQ2_VERIFY_FAILED
 * with the report otherwise. */
int sq2_module_check(const sq2_module* m, char** report);
int sq2_module_tensor(const sq2_module* a, const sq2_module* b, sq2_module** out);
int sq2_module_dual(const sq2_module* m, sq2_module** out);
/* Splits off free summands: comma-separated shift list and the remainder. */
int sq2_module_split(const sq2_module* m, char** shifts, sq2_module** remainder);

/* Resolution chart of an A(1)-module; format is "ascii", "tsv" or "svg". */
int sq2_ext_chart(const sq2_module* m, int s_max, int t_max, const char* format,
                  char** out);

/* Presented duality algebras, JSON format as documented in the library
 * headers. */
typedef struct sq2_algebra sq2_algebra;
int sq2_algebra_parse(const char* json, sq2_algebra** out);
void sq2_algebra_free(sq2_algebra* p);
/* Build report, duality pairings, and the cross-module duality checks;
 * SQ2_VERIFY_FAILED with the collected failures when any check fails. */
int sq2_algebra_verify(const sq2_algebra* p, char** report);
/* Wu, Stiefel-Whitney and dual Stiefel-Whitney classes, one "vK = expr"
 * line per class. */
int sq2_algebra_classes(const sq2_algebra* p, char** table);

/* Aggregated verification suite. `names` is NULL for every check or a
 * comma-separated subset; SQ2_VERIFY_FAILED when any entry fails. */
int sq2_paper_suite(const char* names, int as_json, char** out);

#ifdef __cplusplus
}
#endif

#endif
