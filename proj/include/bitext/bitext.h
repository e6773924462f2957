// Copyright 2026 The bitext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the bitext mining library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function (NULL is accepted). Every fallible call returns a
 * bitext_status; on failure bitext_last_error() describes the problem. The
 * message is per thread and stays valid until the next failing call on that
 * thread. Strings returned by accessors live as long as their handle.
 */

#ifndef BITEXT_BITEXT_H_
#define BITEXT_BITEXT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(BITEXT_BUILDING_LIBRARY)
#define BITEXT_API __attribute__((visibility("default")))
#else
#define BITEXT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bitext_status {
  BITEXT_OK = 0,
  BITEXT_ERR_INVALID_ARGUMENT = 1,
  BITEXT_ERR_IO = 2,
  BITEXT_ERR_PARSE = 3,
  BITEXT_ERR_DATA = 4,
  BITEXT_ERR_SEARCH = 5,
  BITEXT_ERR_INTERNAL = 99
} bitext_status;

BITEXT_API const char* bitext_last_error(void);
BITEXT_API const char* bitext_version(void);

/* ---- corpus: paired comparable documents ---- */

typedef struct bitext_corpus bitext_corpus;

/* Reads both document files and the link table and pairs the articles.
 * skipped/duplicates may be NULL. */
BITEXT_API bitext_status bitext_corpus_ingest(
    const char* source_path, const char* source_lang, const char* target_path,
    const char* target_lang, const char* links_path, bitext_corpus** out,
    size_t* skipped, size_t* duplicates);
BITEXT_API bitext_status bitext_corpus_load(const char* dir, bitext_corpus** out);
BITEXT_API bitext_status bitext_corpus_save(const bitext_corpus* corpus,
                                            const char* dir);
BITEXT_API size_t bitext_corpus_size(const bitext_corpus* corpus);
BITEXT_API const char* bitext_corpus_topic(const bitext_corpus* corpus,
                                           size_t index);
BITEXT_API void bitext_corpus_free(bitext_corpus* corpus);

/* ---- parallel sentences (source<TAB>target lines) ---- */

typedef struct bitext_parallel bitext_parallel;

BITEXT_API bitext_status bitext_parallel_load(const char* path,
                                              bitext_parallel** out);
BITEXT_API size_t bitext_parallel_size(const bitext_parallel* parallel);
BITEXT_API void bitext_parallel_free(bitext_parallel* parallel);

/* ---- lexicon ---- */

typedef struct bitext_lexicon bitext_lexicon;

BITEXT_API bitext_status bitext_lexicon_build(const bitext_parallel* parallel,
                                              int iterations,
                                              bitext_lexicon** out);
/* Adds single-token title pairs from a source<TAB>target file. */
BITEXT_API bitext_status bitext_lexicon_merge_titles(bitext_lexicon* lexicon,
                                                     const char* titles_path,
                                                     size_t* merged,
                                                     size_t* skipped);
BITEXT_API bitext_status bitext_lexicon_load(const char* path,
                                             bitext_lexicon** out);
BITEXT_API bitext_status bitext_lexicon_save(const bitext_lexicon* lexicon,
                                             const char* path);
BITEXT_API size_t bitext_lexicon_entry_count(const bitext_lexicon* lexicon);
BITEXT_API double bitext_lexicon_probability(const bitext_lexicon* lexicon,
                                             const char* source,
                                             const char* target);
BITEXT_API void bitext_lexicon_free(bitext_lexicon* lexicon);

/* ---- similarity model ---- */

typedef struct bitext_model bitext_model;

/* Trains on the given positives plus one seeded negative per positive.
 * accuracy (may be NULL) receives the training accuracy in [0,1]. */
BITEXT_API bitext_status bitext_model_train(const bitext_parallel* positives,
                                            const bitext_lexicon* lexicon,
                                            int epochs, uint64_t seed,
                                            bitext_model** out,
                                            double* accuracy);
BITEXT_API bitext_status bitext_model_load(const char* path, bitext_model** out);
BITEXT_API bitext_status bitext_model_save(const bitext_model* model,
                                           const char* path);
BITEXT_API bitext_status bitext_model_similarity(const bitext_model* model,
                                                 const bitext_lexicon* lexicon,
                                                 const char* source,
                                                 const char* target,
                                                 double* out);
BITEXT_API void bitext_model_free(bitext_model* model);

/* ---- mining ---- */

typedef struct bitext_mining_config {
  double threshold;
  double gap_penalty;
  double match_bonus;
  double mismatch_cost;
  unsigned workers;
} bitext_mining_config;

/* threshold 0.5, gap penalty 2, match +1, mismatch -1, one worker. */
BITEXT_API void bitext_mining_config_default(bitext_mining_config* config);

typedef enum bitext_engine {
  BITEXT_ENGINE_NW = 0,
  BITEXT_ENGINE_NW_WAVEFRONT = 1,
  BITEXT_ENGINE_ASTAR = 2,
  BITEXT_ENGINE_ASTAR_UNCONSTRAINED = 3
} bitext_engine;

/* Accepts nw, nw-wavefront, astar, astar-unconstrained (or with '_'). */
BITEXT_API bitext_status bitext_engine_parse(const char* name,
                                             bitext_engine* out);
BITEXT_API const char* bitext_engine_name(bitext_engine engine);

/* Mined bi-sentences plus the topics that failed. */
typedef struct bitext_bitext bitext_bitext;

BITEXT_API bitext_status bitext_mine(const bitext_model* model,
                                     const bitext_lexicon* lexicon,
                                     const bitext_corpus* corpus,
                                     const bitext_mining_config* config,
                                     bitext_engine engine, bitext_bitext** out);
BITEXT_API bitext_status bitext_bitext_load(const char* path,
                                            bitext_bitext** out);
BITEXT_API bitext_status bitext_bitext_save(const bitext_bitext* bitext,
                                            const char* path);
BITEXT_API size_t bitext_bitext_size(const bitext_bitext* bitext);
BITEXT_API bitext_status bitext_bitext_entry(const bitext_bitext* bitext,
                                             size_t index, double* score,
                                             const char** source,
                                             const char** target);
BITEXT_API size_t bitext_bitext_failure_count(const bitext_bitext* bitext);
BITEXT_API const char* bitext_bitext_failure_topic(const bitext_bitext* bitext,
                                                   size_t index);
BITEXT_API const char* bitext_bitext_failure_message(
    const bitext_bitext* bitext, size_t index);
BITEXT_API bitext_status bitext_bitext_stats(const bitext_bitext* bitext,
                                             uint64_t* pair_count,
                                             uint64_t* source_unique_tokens,
                                             uint64_t* target_unique_tokens);
BITEXT_API void bitext_bitext_free(bitext_bitext* bitext);

/* ---- tuning ---- */

typedef struct bitext_tuning_samples bitext_tuning_samples;
typedef struct bitext_tuning_result bitext_tuning_result;

/* Reads topic<TAB>source_index<TAB>target_index rows against a corpus. */
BITEXT_API bitext_status bitext_tuning_samples_load(
    const bitext_corpus* corpus, const char* reference_path,
    bitext_tuning_samples** out);
BITEXT_API size_t bitext_tuning_samples_size(
    const bitext_tuning_samples* samples);
BITEXT_API void bitext_tuning_samples_free(bitext_tuning_samples* samples);

/* Random search over threshold in [0,1] and gap penalty in [0,5]; trial 0
 * evaluates `defaults`. Trials run on defaults->workers threads. */
BITEXT_API bitext_status bitext_tune(const bitext_model* model,
                                     const bitext_lexicon* lexicon,
                                     const bitext_tuning_samples* samples,
                                     const bitext_mining_config* defaults,
                                     size_t budget, uint64_t seed,
                                     bitext_engine engine,
                                     bitext_tuning_result** out);
BITEXT_API double bitext_tuning_result_threshold(const bitext_tuning_result* r);
BITEXT_API double bitext_tuning_result_gap_penalty(const bitext_tuning_result* r);
BITEXT_API double bitext_tuning_result_agreement(const bitext_tuning_result* r);
BITEXT_API double bitext_tuning_result_default_agreement(
    const bitext_tuning_result* r);
BITEXT_API size_t bitext_tuning_result_trials(const bitext_tuning_result* r);
BITEXT_API size_t bitext_tuning_result_best_trial(const bitext_tuning_result* r);
/* Writes the JSON report. */
BITEXT_API bitext_status bitext_tuning_result_save(const bitext_tuning_result* r,
                                                   const char* path);
BITEXT_API void bitext_tuning_result_free(bitext_tuning_result* r);

/* ---- score matrices and single alignments ---- */

typedef struct bitext_matrix bitext_matrix;
typedef struct bitext_alignment bitext_alignment;

/* cells: rows * cols values in [0,1], row-major. */
BITEXT_API bitext_status bitext_matrix_create(size_t rows, size_t cols,
                                              const double* cells,
                                              bitext_matrix** out);
/* Uniform random cells from a seeded generator. */
BITEXT_API bitext_status bitext_matrix_random(size_t rows, size_t cols,
                                              uint64_t seed,
                                              bitext_matrix** out);
/* Exact-match matrix: 1 where row and column labels are equal, else 0. */
BITEXT_API bitext_status bitext_matrix_symbols(const char* const* row_labels,
                                               size_t rows,
                                               const char* const* col_labels,
                                               size_t cols,
                                               bitext_matrix** out);
BITEXT_API void bitext_matrix_free(bitext_matrix* matrix);

typedef enum bitext_step_kind {
  BITEXT_STEP_MATCH = 0,
  BITEXT_STEP_GAP_SOURCE = 1,
  BITEXT_STEP_GAP_TARGET = 2
} bitext_step_kind;

/* Runs one engine; the wavefront engine uses config->workers threads. */
BITEXT_API bitext_status bitext_align(const bitext_matrix* matrix,
                                      const bitext_mining_config* config,
                                      bitext_engine engine,
                                      bitext_alignment** out);
BITEXT_API double bitext_alignment_score(const bitext_alignment* alignment);
BITEXT_API size_t bitext_alignment_step_count(const bitext_alignment* alignment);
/* The index a gap does not use is reported as SIZE_MAX. */
BITEXT_API bitext_status bitext_alignment_step(const bitext_alignment* alignment,
                                               size_t index,
                                               bitext_step_kind* kind,
                                               size_t* source, size_t* target);
/* Two lines: column labels, then row labels, "-" for a gap, items joined
 * by ", ". Writes at most `capacity` bytes including the terminator;
 * `needed` (may be NULL) receives the full length plus one. */
BITEXT_API bitext_status bitext_alignment_render(
    const bitext_alignment* alignment, const char* const* row_labels,
    const char* const* col_labels, char* buffer, size_t capacity,
    size_t* needed);
BITEXT_API void bitext_alignment_free(bitext_alignment* alignment);

/* ---- run manifests ---- */

typedef struct bitext_manifest bitext_manifest;

BITEXT_API bitext_status bitext_manifest_create(const char* command,
                                                bitext_manifest** out);
BITEXT_API bitext_status bitext_manifest_set_param(bitext_manifest* manifest,
                                                   const char* key,
                                                   const char* value);
/* Hashes the file immediately. */
BITEXT_API bitext_status bitext_manifest_add_input(bitext_manifest* manifest,
                                                   const char* path);
BITEXT_API void bitext_manifest_set_wall_time(bitext_manifest* manifest,
                                              uint64_t milliseconds);
BITEXT_API bitext_status bitext_manifest_write(const bitext_manifest* manifest,
                                               const char* path);
BITEXT_API void bitext_manifest_free(bitext_manifest* manifest);

#ifdef __cplusplus
}
#endif

#endif  /* BITEXT_BITEXT_H_ */
