/* C API for the modular-functor basic-data engine.
 *
 * All functions are thread-compatible: distinct handles may be used from
 * distinct threads; a single handle must not be mutated concurrently.
 * Error details for the most recent failing call on the current thread are
 * available through mf_last_error().
 */
#ifndef MODFUNC_H
#define MODFUNC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mf_theory mf_theory;

typedef enum mf_status {
    MF_OK = 0,
    MF_CHECK_FAILED = 1,   /* a relation or consistency check failed */
    MF_PARSE_ERROR = 2,    /* malformed document or shape mismatch */
    MF_GENERATOR_ERROR = 3,
    MF_BAD_ARGUMENT = 4,
    MF_NUMERIC_ERROR = 5
} mf_status;

/* --- lifecycle ----------------------------------------------------------- */
mf_status mf_theory_from_json(const char* text, size_t len, mf_theory** out);
mf_status mf_theory_from_file(const char* path, mf_theory** out);
mf_status mf_theory_generate(const char* name, mf_theory** out);
void mf_theory_free(mf_theory* t);

/* Serialized basic-data document; free with mf_string_free. */
char* mf_theory_to_json(const mf_theory* t);
void mf_string_free(char* s);

const char* mf_last_error(void);

/* --- basic queries -------------------------------------------------------- */
size_t mf_label_count(const mf_theory* t);
const char* mf_label_name(const mf_theory* t, size_t index); /* NULL when out of range */
int mf_has_s_matrix(const mf_theory* t);
double mf_tolerance(const mf_theory* t);
mf_status mf_set_tolerance(mf_theory* t, double tol);
mf_status mf_drop_s_matrix(mf_theory* t);

/* --- checks --------------------------------------------------------------- */
/* Structural checks (dimension symmetries, flip consistency, fusion family).
 * Report lines are tab separated: relation, labels, residual, PASS/FAIL. */
mf_status mf_structural_report(const mf_theory* t, char** report, int* all_pass);

/* The genus-zero relation suite; jobs > 1 parallelizes the sweep with a
 * deterministic report order. */
mf_status mf_relations_report(const mf_theory* t, unsigned jobs, char** report, int* all_pass);

/* Curve-operator and S-reconstruction consistency reports. */
mf_status mf_curve_op_report(const mf_theory* t, char** report, int* all_pass);
mf_status mf_s_reconstruction_report(const mf_theory* t, char** report, int* all_pass);

/* --- computations ---------------------------------------------------------- */
mf_status mf_verlinde_dim(const mf_theory* t, unsigned genus, const char* const* boundary,
                          size_t n_boundary, unsigned long long* out);

/* E_{lambda} and the contractible-curve scalar S_{0,lambda}/S_{0,0}. */
mf_status mf_e_scalar(const mf_theory* t, const char* label, double* re, double* im);
mf_status mf_contractible_scalar(const mf_theory* t, const char* label, double* re, double* im);

/* C matrix and Dehn coefficients as JSON fragments. */
mf_status mf_c_matrix_json(const mf_theory* t, char** out);
mf_status mf_dehn_coefficients_json(const mf_theory* t, int inverse, char** out);

/* S(lambda) by both routes. variant: 0 = proof reading of Main', 1 = the
 * theorem-display prefactor. Emits the requested route ("main"/"sandwich") as
 * a JSON fragment; residuals report route equivalence and, at lambda = 0 with
 * S present, self-consistency against the stored S. */
mf_status mf_s_lambda(const mf_theory* t, const char* label, const char* route, int variant,
                      char** json_fragment, double* route_residual, double* self_residual);

#ifdef __cplusplus
}
#endif

#endif /* MODFUNC_H */
