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

#include "bitext/bitext.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "bitext/align.hpp"
#include "bitext/corpus.hpp"
#include "bitext/error.hpp"
#include "bitext/lexicon.hpp"
#include "bitext/manifest.hpp"
#include "bitext/mining.hpp"
#include "bitext/similarity.hpp"
#include "bitext/tuning.hpp"
#include "random.hpp"

struct bitext_corpus {
  std::vector<bitext::DocumentPair> pairs;
};
struct bitext_parallel {
  std::vector<bitext::SentencePair> pairs;
};
struct bitext_lexicon {
  bitext::Lexicon lexicon;
};
struct bitext_model {
  bitext::SimilarityModel model;
};
struct bitext_bitext {
  std::vector<bitext::BitextEntry> entries;
  std::vector<bitext::PairFailure> failures;
};
struct bitext_tuning_samples {
  std::vector<bitext::TuningSample> samples;
};
struct bitext_tuning_result {
  bitext::TuningResult result;
};
struct bitext_matrix {
  bitext::ScoreMatrix matrix;
};
struct bitext_alignment {
  bitext::Alignment alignment;
};
struct bitext_manifest {
  bitext::RunManifest manifest;
};

namespace {

thread_local std::string g_last_error;

bitext_status fail(bitext_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
bitext_status guard(Fn&& fn) {
  try {
    fn();
    return BITEXT_OK;
  } catch (const bitext::Error& e) {
    return fail(static_cast<bitext_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BITEXT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BITEXT_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw bitext::Error(bitext::ErrorCode::kInvalidArgument, what);
}

bitext::MiningConfig to_config(const bitext_mining_config* c) {
  require(c != nullptr, "config is NULL");
  bitext::MiningConfig config;
  config.threshold = c->threshold;
  config.gap_penalty = c->gap_penalty;
  config.match_bonus = c->match_bonus;
  config.mismatch_cost = c->mismatch_cost;
  config.workers = c->workers;
  config.validate();
  return config;
}

bitext::Engine to_engine(bitext_engine engine) {
  switch (engine) {
    case BITEXT_ENGINE_NW: return bitext::Engine::kNw;
    case BITEXT_ENGINE_NW_WAVEFRONT: return bitext::Engine::kNwWavefront;
    case BITEXT_ENGINE_ASTAR: return bitext::Engine::kAstar;
    case BITEXT_ENGINE_ASTAR_UNCONSTRAINED: return bitext::Engine::kAstarUnconstrained;
  }
  throw bitext::Error(bitext::ErrorCode::kInvalidArgument, "unknown engine");
}

template <typename Handle, typename Make>
bitext_status create(Handle** out, Make&& make) {
  if (out == nullptr) return fail(BITEXT_ERR_INVALID_ARGUMENT, "output pointer is NULL");
  *out = nullptr;
  return guard([&] { *out = new Handle{make()}; });
}

}  // namespace

extern "C" {

const char* bitext_last_error(void) { return g_last_error.c_str(); }
const char* bitext_version(void) { return bitext::kToolVersion; }

bitext_status bitext_corpus_ingest(const char* source_path, const char* source_lang,
                                   const char* target_path, const char* target_lang,
                                   const char* links_path, bitext_corpus** out,
                                   size_t* skipped, size_t* duplicates) {
  return create(out, [&] {
    require(source_path && source_lang && target_path && target_lang && links_path,
            "ingest arguments must not be NULL");
    require(std::strcmp(source_lang, target_lang) != 0,
            "source and target languages must differ");
    const auto src = bitext::ingest_documents(source_path, source_lang);
    const auto tgt = bitext::ingest_documents(target_path, target_lang);
    const auto links = bitext::read_links(links_path);
    auto result = bitext::pair_articles(src, tgt, links);
    if (skipped) *skipped = result.skipped;
    if (duplicates) *duplicates = result.duplicates;
    return std::move(result.pairs);
  });
}

bitext_status bitext_corpus_load(const char* dir, bitext_corpus** out) {
  return create(out, [&] {
    require(dir != nullptr, "directory is NULL");
    return bitext::load_corpus(dir);
  });
}

bitext_status bitext_corpus_save(const bitext_corpus* corpus, const char* dir) {
  return guard([&] {
    require(corpus && dir, "corpus and directory must not be NULL");
    bitext::save_corpus(dir, corpus->pairs);
  });
}

size_t bitext_corpus_size(const bitext_corpus* corpus) {
  return corpus ? corpus->pairs.size() : 0;
}

const char* bitext_corpus_topic(const bitext_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->pairs.size()) return nullptr;
  return corpus->pairs[index].topic_id.c_str();
}

void bitext_corpus_free(bitext_corpus* corpus) { delete corpus; }

bitext_status bitext_parallel_load(const char* path, bitext_parallel** out) {
  return create(out, [&] {
    require(path != nullptr, "path is NULL");
    return bitext::read_parallel(path);
  });
}

size_t bitext_parallel_size(const bitext_parallel* parallel) {
  return parallel ? parallel->pairs.size() : 0;
}

void bitext_parallel_free(bitext_parallel* parallel) { delete parallel; }

bitext_status bitext_lexicon_build(const bitext_parallel* parallel, int iterations,
                                   bitext_lexicon** out) {
  return create(out, [&] {
    require(parallel != nullptr, "parallel corpus is NULL");
    bitext::LexiconOptions options;
    options.iterations = iterations;
    return bitext::build_lexicon(parallel->pairs, options);
  });
}

bitext_status bitext_lexicon_merge_titles(bitext_lexicon* lexicon, const char* titles_path,
                                          size_t* merged, size_t* skipped) {
  return guard([&] {
    require(lexicon && titles_path, "lexicon and titles path must not be NULL");
    const auto titles = bitext::read_links(titles_path);
    bitext::TitleMergeReport report;
    lexicon->lexicon =
        bitext::merge_title_lexicon(std::move(lexicon->lexicon), titles, &report);
    if (merged) *merged = report.merged;
    if (skipped) *skipped = report.skipped;
  });
}

bitext_status bitext_lexicon_load(const char* path, bitext_lexicon** out) {
  return create(out, [&] {
    require(path != nullptr, "path is NULL");
    return bitext::load_lexicon(path);
  });
}

bitext_status bitext_lexicon_save(const bitext_lexicon* lexicon, const char* path) {
  return guard([&] {
    require(lexicon && path, "lexicon and path must not be NULL");
    bitext::save_lexicon(path, lexicon->lexicon);
  });
}

size_t bitext_lexicon_entry_count(const bitext_lexicon* lexicon) {
  return lexicon ? lexicon->lexicon.entry_count() : 0;
}

double bitext_lexicon_probability(const bitext_lexicon* lexicon, const char* source,
                                  const char* target) {
  if (!lexicon || !source || !target) return 0.0;
  return lexicon->lexicon.probability(source, target);
}

void bitext_lexicon_free(bitext_lexicon* lexicon) { delete lexicon; }

bitext_status bitext_model_train(const bitext_parallel* positives,
                                 const bitext_lexicon* lexicon, int epochs, uint64_t seed,
                                 bitext_model** out, double* accuracy) {
  return create(out, [&] {
    require(positives && lexicon, "positives and lexicon must not be NULL");
    if (positives->pairs.empty()) {
      throw bitext::Error(bitext::ErrorCode::kInvalidArgument, "no training pairs");
    }
    const auto negatives = bitext::make_negatives(positives->pairs, seed);
    bitext::TrainingOptions options;
    options.epochs = epochs;
    options.seed = seed;
    auto model =
        bitext::train_classifier(positives->pairs, negatives, lexicon->lexicon, options);
    if (accuracy) {
      *accuracy = bitext::classification_accuracy(model, lexicon->lexicon,
                                                  positives->pairs, negatives);
    }
    return model;
  });
}

bitext_status bitext_model_load(const char* path, bitext_model** out) {
  return create(out, [&] {
    require(path != nullptr, "path is NULL");
    return bitext::load_model(path);
  });
}

bitext_status bitext_model_save(const bitext_model* model, const char* path) {
  return guard([&] {
    require(model && path, "model and path must not be NULL");
    bitext::save_model(path, model->model);
  });
}

bitext_status bitext_model_similarity(const bitext_model* model,
                                      const bitext_lexicon* lexicon, const char* source,
                                      const char* target, double* out) {
  return guard([&] {
    require(model && lexicon && source && target && out, "arguments must not be NULL");
    *out = bitext::similarity(model->model, source, target, lexicon->lexicon);
  });
}

void bitext_model_free(bitext_model* model) { delete model; }

void bitext_mining_config_default(bitext_mining_config* config) {
  if (!config) return;
  const bitext::MiningConfig d;
  *config = {d.threshold, d.gap_penalty, d.match_bonus, d.mismatch_cost, d.workers};
}

bitext_status bitext_engine_parse(const char* name, bitext_engine* out) {
  if (!name || !out) return fail(BITEXT_ERR_INVALID_ARGUMENT, "arguments must not be NULL");
  const auto engine = bitext::parse_engine(name);
  if (!engine) return fail(BITEXT_ERR_INVALID_ARGUMENT, std::string("unknown engine ") + name);
  switch (*engine) {
    case bitext::Engine::kNw: *out = BITEXT_ENGINE_NW; break;
    case bitext::Engine::kNwWavefront: *out = BITEXT_ENGINE_NW_WAVEFRONT; break;
    case bitext::Engine::kAstar: *out = BITEXT_ENGINE_ASTAR; break;
    case bitext::Engine::kAstarUnconstrained: *out = BITEXT_ENGINE_ASTAR_UNCONSTRAINED; break;
  }
  return BITEXT_OK;
}

const char* bitext_engine_name(bitext_engine engine) {
  try {
    return bitext::engine_name(to_engine(engine)).data();
  } catch (...) {
    return "unknown";
  }
}

bitext_status bitext_mine(const bitext_model* model, const bitext_lexicon* lexicon,
                          const bitext_corpus* corpus, const bitext_mining_config* config,
                          bitext_engine engine, bitext_bitext** out) {
  return create(out, [&] {
    require(model && lexicon && corpus, "model, lexicon and corpus must not be NULL");
    auto report = bitext::mine_corpus(model->model, lexicon->lexicon, corpus->pairs,
                                      to_config(config), to_engine(engine));
    return bitext_bitext{std::move(report.entries), std::move(report.failures)};
  });
}

bitext_status bitext_bitext_load(const char* path, bitext_bitext** out) {
  return create(out, [&] {
    require(path != nullptr, "path is NULL");
    return bitext_bitext{bitext::read_bitext(path), {}};
  });
}

bitext_status bitext_bitext_save(const bitext_bitext* bitext, const char* path) {
  return guard([&] {
    require(bitext && path, "bitext and path must not be NULL");
    bitext::write_bitext(std::filesystem::path(path), bitext->entries);
  });
}

size_t bitext_bitext_size(const bitext_bitext* bitext) {
  return bitext ? bitext->entries.size() : 0;
}

bitext_status bitext_bitext_entry(const bitext_bitext* bitext, size_t index, double* score,
                                  const char** source, const char** target) {
  return guard([&] {
    require(bitext && index < bitext->entries.size(), "entry index out of range");
    const auto& e = bitext->entries[index];
    if (score) *score = e.score;
    if (source) *source = e.source.c_str();
    if (target) *target = e.target.c_str();
  });
}

size_t bitext_bitext_failure_count(const bitext_bitext* bitext) {
  return bitext ? bitext->failures.size() : 0;
}

const char* bitext_bitext_failure_topic(const bitext_bitext* bitext, size_t index) {
  if (!bitext || index >= bitext->failures.size()) return nullptr;
  return bitext->failures[index].topic_id.c_str();
}

const char* bitext_bitext_failure_message(const bitext_bitext* bitext, size_t index) {
  if (!bitext || index >= bitext->failures.size()) return nullptr;
  return bitext->failures[index].message.c_str();
}

bitext_status bitext_bitext_stats(const bitext_bitext* bitext, uint64_t* pair_count,
                                  uint64_t* source_unique_tokens,
                                  uint64_t* target_unique_tokens) {
  return guard([&] {
    require(bitext != nullptr, "bitext is NULL");
    const auto stats = bitext::corpus_stats(bitext->entries);
    if (pair_count) *pair_count = stats.pair_count;
    if (source_unique_tokens) *source_unique_tokens = stats.source_unique_tokens;
    if (target_unique_tokens) *target_unique_tokens = stats.target_unique_tokens;
  });
}

void bitext_bitext_free(bitext_bitext* bitext) { delete bitext; }

bitext_status bitext_tuning_samples_load(const bitext_corpus* corpus,
                                         const char* reference_path,
                                         bitext_tuning_samples** out) {
  return create(out, [&] {
    require(corpus && reference_path, "corpus and reference path must not be NULL");
    const auto rows = bitext::read_references(reference_path);
    return bitext::make_tuning_samples(corpus->pairs, rows);
  });
}

size_t bitext_tuning_samples_size(const bitext_tuning_samples* samples) {
  return samples ? samples->samples.size() : 0;
}

void bitext_tuning_samples_free(bitext_tuning_samples* samples) { delete samples; }

bitext_status bitext_tune(const bitext_model* model, const bitext_lexicon* lexicon,
                          const bitext_tuning_samples* samples,
                          const bitext_mining_config* defaults, size_t budget,
                          uint64_t seed, bitext_engine engine,
                          bitext_tuning_result** out) {
  return create(out, [&] {
    require(model && lexicon && samples, "model, lexicon and samples must not be NULL");
    bitext::TuningOptions options;
    options.budget = budget;
    options.seed = seed;
    options.engine = to_engine(engine);
    return bitext::tune(model->model, lexicon->lexicon, samples->samples,
                        to_config(defaults), options);
  });
}

double bitext_tuning_result_threshold(const bitext_tuning_result* r) {
  return r ? r->result.threshold : 0.0;
}
double bitext_tuning_result_gap_penalty(const bitext_tuning_result* r) {
  return r ? r->result.gap_penalty : 0.0;
}
double bitext_tuning_result_agreement(const bitext_tuning_result* r) {
  return r ? r->result.agreement : 0.0;
}
double bitext_tuning_result_default_agreement(const bitext_tuning_result* r) {
  return r ? r->result.default_agreement : 0.0;
}
size_t bitext_tuning_result_trials(const bitext_tuning_result* r) {
  return r ? r->result.trials : 0;
}
size_t bitext_tuning_result_best_trial(const bitext_tuning_result* r) {
  return r ? r->result.best_trial : 0;
}

bitext_status bitext_tuning_result_save(const bitext_tuning_result* r, const char* path) {
  return guard([&] {
    require(r && path, "result and path must not be NULL");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw bitext::Error(bitext::ErrorCode::kIo, std::string("cannot write ") + path);
    out << bitext::tuning_report_json(r->result);
    out.flush();
    if (!out) throw bitext::Error(bitext::ErrorCode::kIo, std::string("error writing ") + path);
  });
}

void bitext_tuning_result_free(bitext_tuning_result* r) { delete r; }

bitext_status bitext_matrix_create(size_t rows, size_t cols, const double* cells,
                                   bitext_matrix** out) {
  return create(out, [&] {
    require(cells != nullptr || rows * cols == 0, "cells is NULL");
    return bitext::ScoreMatrix(rows, cols, std::vector<double>(cells, cells + rows * cols));
  });
}

bitext_status bitext_matrix_random(size_t rows, size_t cols, uint64_t seed,
                                   bitext_matrix** out) {
  return create(out, [&] {
    bitext::rnd::Engine rng(seed);
    std::vector<double> cells(rows * cols);
    for (double& c : cells) c = bitext::rnd::uniform_unit(rng);
    return bitext::ScoreMatrix(rows, cols, std::move(cells));
  });
}

bitext_status bitext_matrix_symbols(const char* const* row_labels, size_t rows,
                                    const char* const* col_labels, size_t cols,
                                    bitext_matrix** out) {
  return create(out, [&] {
    require(row_labels && col_labels, "labels must not be NULL");
    std::vector<double> cells;
    cells.reserve(rows * cols);
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0; j < cols; ++j) {
        require(row_labels[i] && col_labels[j], "label is NULL");
        cells.push_back(std::strcmp(row_labels[i], col_labels[j]) == 0 ? 1.0 : 0.0);
      }
    }
    return bitext::ScoreMatrix(rows, cols, std::move(cells));
  });
}

void bitext_matrix_free(bitext_matrix* matrix) { delete matrix; }

bitext_status bitext_align(const bitext_matrix* matrix, const bitext_mining_config* config,
                           bitext_engine engine, bitext_alignment** out) {
  return create(out, [&] {
    require(matrix != nullptr, "matrix is NULL");
    return bitext::run_engine(to_engine(engine), matrix->matrix, to_config(config));
  });
}

double bitext_alignment_score(const bitext_alignment* alignment) {
  return alignment ? alignment->alignment.score : 0.0;
}

size_t bitext_alignment_step_count(const bitext_alignment* alignment) {
  return alignment ? alignment->alignment.steps.size() : 0;
}

bitext_status bitext_alignment_step(const bitext_alignment* alignment, size_t index,
                                    bitext_step_kind* kind, size_t* source,
                                    size_t* target) {
  return guard([&] {
    require(alignment && index < alignment->alignment.steps.size(),
            "step index out of range");
    const auto& s = alignment->alignment.steps[index];
    if (kind) *kind = static_cast<bitext_step_kind>(s.kind);
    if (source) *source = s.source;
    if (target) *target = s.target;
  });
}

bitext_status bitext_alignment_render(const bitext_alignment* alignment,
                                      const char* const* row_labels,
                                      const char* const* col_labels, char* buffer,
                                      size_t capacity, size_t* needed) {
  return guard([&] {
    require(alignment && row_labels && col_labels, "arguments must not be NULL");
    std::string cols_line, rows_line;
    for (const auto& s : alignment->alignment.steps) {
      if (!cols_line.empty()) {
        cols_line += ", ";
        rows_line += ", ";
      }
      cols_line += s.kind == bitext::StepKind::kGapSource ? "-" : col_labels[s.target];
      rows_line += s.kind == bitext::StepKind::kGapTarget ? "-" : row_labels[s.source];
    }
    const std::string text = cols_line + "\n" + rows_line;
    if (needed) *needed = text.size() + 1;
    if (buffer && capacity > 0) {
      const size_t n = std::min(capacity - 1, text.size());
      std::memcpy(buffer, text.data(), n);
      buffer[n] = '\0';
    }
  });
}

void bitext_alignment_free(bitext_alignment* alignment) { delete alignment; }

bitext_status bitext_manifest_create(const char* command, bitext_manifest** out) {
  return create(out, [&] {
    require(command != nullptr, "command is NULL");
    return bitext::RunManifest(command);
  });
}

bitext_status bitext_manifest_set_param(bitext_manifest* manifest, const char* key,
                                        const char* value) {
  return guard([&] {
    require(manifest && key && value, "arguments must not be NULL");
    manifest->manifest.set_parameter(key, value);
  });
}

bitext_status bitext_manifest_add_input(bitext_manifest* manifest, const char* path) {
  return guard([&] {
    require(manifest && path, "arguments must not be NULL");
    manifest->manifest.add_input(path);
  });
}

void bitext_manifest_set_wall_time(bitext_manifest* manifest, uint64_t milliseconds) {
  if (manifest) manifest->manifest.set_wall_time_ms(milliseconds);
}

bitext_status bitext_manifest_write(const bitext_manifest* manifest, const char* path) {
  return guard([&] {
    require(manifest && path, "arguments must not be NULL");
    manifest->manifest.write(path);
  });
}

void bitext_manifest_free(bitext_manifest* manifest) { delete manifest; }

}  // extern "C"
