/*
 * Copyright 2026 the cropkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C bindings for the cropkit core: opaque handles, status codes, and JSON
 * strings for structured data. Strings returned through char** out-params are
 * owned by the caller and released with ck_string_free. */

#ifndef CROPKIT_C_H
#define CROPKIT_C_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status values share the CLI exit-code contract: 0 ok, 1 checked-and-false,
 * 2 usage/input error, 3 budget exhausted. */
typedef enum ck_status {
  CK_OK = 0,
  CK_FALSE = 1,
  CK_ERR_INPUT = 2,
  CK_ERR_BUDGET = 3,
  CK_ERR_INTERNAL = 4
} ck_status;

typedef struct ck_ctx ck_ctx;   /* signature + verified rule registry */
typedef struct ck_term ck_term; /* controlled-circuit term */
typedef struct ck_sum ck_sum;   /* direct-sum term */

/* sig: a shipped signature name ("x", "mobit", "v", "quantum", "pi") or a
 * path to a .sig file. data_dir: the directory holding signatures/ rules/
 * scripts/; pass NULL for the build-time default. */
ck_ctx* ck_ctx_new(const char* sig, const char* data_dir, char** err);
void ck_ctx_free(ck_ctx* ctx);

void ck_string_free(char* s);

ck_status ck_parse(ck_ctx* ctx, const char* text, ck_term** out, char** err);
ck_status ck_parse_sum(ck_ctx* ctx, const char* text, ck_sum** out, char** err);
void ck_term_free(ck_term* t);
void ck_sum_free(ck_sum* s);
char* ck_print(const ck_term* t);
char* ck_print_sum(const ck_sum* s);
ck_status ck_wires(ck_ctx* ctx, const ck_term* t, int* out, char** err);

/* Evaluation; the JSON value formats are:
 *   perm    {"size":N,"images":[...]}
 *   gf2     {"dim":N,"rows":[[0,1,...],...]}
 *   cyclo   {"dim":N,"entries":[[{"coeffs":[n0,n1,n2,n3],"log2den":d},...],...]}
 *   complex {"dim":N,"entries":[[[re,im],...],...]} */
ck_status ck_eval(ck_ctx* ctx, const ck_term* t, const char* backend, double tol,
                  char** json_out, char** err);
ck_status ck_eval_sum(ck_ctx* ctx, const ck_sum* s, const char* backend, double tol,
                      char** json_out, char** err);

/* *equal_out is 1 or 0; status is CK_OK whenever both terms evaluate. */
ck_status ck_equiv(ck_ctx* ctx, const ck_term* a, const ck_term* b, const char* backend,
                   double tol, int* equal_out, char** err);

/* Synthesis from a permutation file body {"size":N,"images":[...]};
 * *letters_out counts the multi-controlled NOTs emitted. */
ck_status ck_synth(ck_ctx* ctx, const char* perm_json, ck_term** out, int* letters_out,
                   char** err);

/* Gray-word factorization of {"dim":N,"rows":[[...],...]} over GF(2). */
ck_status ck_factor_gf2(ck_ctx* ctx, const char* gf2_json, char** word_json_out, char** err);

/* Proof replay: CK_OK accept / CK_FALSE reject; the report carries the trace
 * and, on rejection, the failing step. */
ck_status ck_check(ck_ctx* ctx, const char* script_json, char** report_json_out, char** err);

/* Bounded equivalence search: CK_OK found (script emitted), CK_FALSE semantic
 * counterexample, CK_ERR_BUDGET depth or time budget exhausted. */
ck_status ck_search(ck_ctx* ctx, const ck_term* a, const ck_term* b, int max_depth,
                    double budget_seconds, char** script_json_out, char** err);

/* The Fig.-3-style table for n bits. */
ck_status ck_gray_table(int n, char** json_out, char** err);

/* Control-equation and bipermutative-axiom sweeps on one backend; CK_FALSE
 * with a counterexample in the report when a check fails. */
ck_status ck_axioms(ck_ctx* ctx, const char* backend, int max_n, int trials, uint64_t seed,
                    char** report_json_out, char** err);

#ifdef __cplusplus
}
#endif

#endif /* CROPKIT_C_H */
