/* C interface to the nonsignaling-box analysis library.
 *
 * All functions return a status code; NSBOX_OK means success. On failure
 * nsbox_last_error() describes the problem for the calling thread. Output
 * strings are heap-allocated UTF-8 and must be released with
 * nsbox_string_free(); output boxes must be released with nsbox_box_free().
 */
#ifndef NSBOX_H
#define NSBOX_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct nsbox_box nsbox_box;

enum nsbox_status {
    NSBOX_OK = 0,
    NSBOX_ERR_USAGE = 1,        /* bad argument, value out of domain */
    NSBOX_ERR_INVALID_BOX = 2,  /* box fails exact distribution checks */
    NSBOX_ERR_VERIFICATION = 3, /* a decomposition's checks cannot all pass */
    NSBOX_ERR_FORMAT = 4,       /* malformed document or literal */
    NSBOX_ERR_INTERNAL = 5
};

const char* nsbox_version(void);

/* Message for the most recent failure on this thread; empty string if the
 * last call succeeded. The pointer stays valid until the next call on the
 * same thread. */
const char* nsbox_last_error(void);

void nsbox_string_free(char* s);

/* Constructor grammar: det:ABGE | pr:ABG | noise | noisy-pr:ABG:p |
 * mix:w1*S1+w2*S2+... with parenthesized sub-specs allowed. */
int nsbox_box_from_spec(const char* spec, nsbox_box** out);

/* nsbox/1 JSON document. Construction does not require the distribution to
 * be valid; use nsbox_box_validate or the analyze report to decide that. */
int nsbox_box_from_json(const char* text, nsbox_box** out);
int nsbox_box_to_json(const nsbox_box* b, char** out);
void nsbox_box_free(nsbox_box* b);

/* Sets *ok to 1 when the box is a normalized nonnegative nonsignaling
 * distribution, else 0. */
int nsbox_box_validate(const nsbox_box* b, int* ok);

/* Full analysis document: validation, correlators, CHSH values, the
 * covariance nonlocality measure, both locality certificates, PR fraction,
 * and family thresholds for exact noisy PR boxes. Works on invalid boxes;
 * the document's "valid" field reports the verdict. */
int nsbox_analyze(const nsbox_box* b, char** json_out);

/* mode is "pr-fraction", "vertex", or "dim2"; seed and restarts only affect
 * dim2. Returns NSBOX_ERR_VERIFICATION when pr-fraction exhausts every
 * candidate vertex; *json_out then carries the per-candidate diagnostics
 * instead of components. */
int nsbox_decompose(const nsbox_box* b, const char* mode, uint64_t seed, int restarts,
                    char** json_out);

int nsbox_key_rate(const nsbox_box* b, char** json_out);

/* CSV over an inclusive n-point grid for the noisy PR family. label is three
 * bits ("000"); lo and hi are exact rational literals. werner != 0 sweeps
 * the singlet visibility instead of the PR weight. */
int nsbox_sweep_csv(const char* label, int werner, const char* lo, const char* hi, int n,
                    char** csv_out);

/* Header plus one CSV row for an arbitrary box; param is echoed into the
 * first column. */
int nsbox_csv_for_box(const nsbox_box* b, const char* param, char** csv_out);

/* Seeded protocol simulation summary; compare != 0 adds z-scores against the
 * analytic values and requires every input pair to be visited. */
int nsbox_simulate(const nsbox_box* b, uint64_t rounds, uint64_t seed, int compare,
                   char** json_out);

/* Extends a two-branch local model into a tripartite no-signaling
 * distribution where the third party holds the branch label. model_json:
 * {"weights":[w0,w1],"alice":[[P(a=0|x=0),P(a=0|x=1)] per branch],
 *  "bob":[...]} with rational entries. Output is an nsbox3/1 document. */
int nsbox_extend_dim2_eve(const char* model_json, char** tripartite_json_out);

/* Exact check that the nsbox3/1 distribution marginalizes to b and that the
 * third party's outcome is uncorrelated with (a,b) at every z. */
int nsbox_check_factorization(const char* tripartite_json, const nsbox_box* b, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* NSBOX_H */
