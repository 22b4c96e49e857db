#ifndef MTOR_MTOR_H
#define MTOR_MTOR_H

/*
 * C interface to the mapping-torus hyperbolicity library.
 *
 * All functions return a status code (MTOR_OK on success). Output strings
 * are heap-allocated JSON or plain text owned by the caller; release them
 * with mtor_string_free. Inputs are opaque handles created by the parse or
 * builtin constructors and released with mtor_input_free.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define MTOR_OK 0
#define MTOR_ERR_PARSE 1
#define MTOR_ERR_BAD_ARG 2
#define MTOR_ERR_NOT_IMMERSION 3
#define MTOR_ERR_UNSUPPORTED 4
#define MTOR_ERR_INTERNAL 5

#define MTOR_VERDICT_HYPERBOLIC 0
#define MTOR_VERDICT_NOT_HYPERBOLIC 10
#define MTOR_VERDICT_INCONCLUSIVE 20

#define MTOR_KIND_GRAPH_MAP 0
#define MTOR_KIND_ENDOMORPHISM 1

typedef struct mtor_input mtor_input;

const char* mtor_version(void);
const char* mtor_error_name(int code);
void mtor_string_free(char* s);

/* Parses the text or JSON input format. On failure fills *error_message. */
int mtor_input_parse(const char* text, mtor_input** out, char** error_message);

/* Loads a built-in example: bs12, sapir, identity, deg1, phi2, phi3, phi4,
 * or psi:<d>. */
int mtor_input_builtin(const char* name, mtor_input** out, char** error_message);

void mtor_input_free(mtor_input* input);

int mtor_input_kind(const mtor_input* input);

/* Canonical text rendering of the input. */
int mtor_input_render(const mtor_input* input, char** text);

/* Comma-separated list of built-in fixture names. */
int mtor_builtin_names(char** text);

/* Immersion check report as JSON. */
int mtor_check_report(const mtor_input* input, char** json);

/* Per-depth pullback report as JSON; depths 1..max_depth. Fails with
 * MTOR_ERR_NOT_IMMERSION when the input is not an immersion. */
int mtor_pullback_report(const mtor_input* input, int max_depth, int with_dot, char** json,
                         char** error_message);

/* Graphviz text for one pullback depth. */
int mtor_pullback_dot(const mtor_input* input, int depth, char** dot, char** error_message);

/* Runs the decision pipeline. budgets_json may be NULL or a JSON object
 * with any of: max_depth, k_budget, d_cap, expansion_cap,
 * max_subdivision_darts, max_pullback_darts. verdict_out receives one of
 * the MTOR_VERDICT_* codes. When run_verify is nonzero the verdict JSON
 * gains a "verified" field computed by the independent checker. */
int mtor_decide(const mtor_input* input, const char* budgets_json, int run_verify, char** json,
                int* verdict_out, char** error_message);

/* Re-checks a verdict JSON against the input; *ok becomes 1 or 0. */
int mtor_verify_verdict(const mtor_input* input, const char* verdict_json, int* ok,
                        char** error_message);

/* Brute-force invariant-word search; endomorphism inputs only. */
int mtor_oracle(const mtor_input* input, int max_len, int max_k, int64_t max_d, char** json,
                char** error_message);

#ifdef __cplusplus
}
#endif

#endif /* MTOR_MTOR_H */
