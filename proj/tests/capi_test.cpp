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

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "bitext/bitext.h"

namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    std::string pattern = (fs::temp_directory_path() / "bitext-capi-XXXXXX").string();
    REQUIRE(mkdtemp(pattern.data()) != nullptr);
    dir = pattern;
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

const char* kParallel =
    "Kota psa.\tWuta wusa.\n"
    "Kob koc kod.\tWub wuc wud.\n"
    "Kod kota.\tWud wuta.\n"
    "Kosa koc.\tWusa wuc.\n"
    "Kob kod kota.\tWub wud wuta.\n"
    "Koc kosa kob.\tWuc wusa wub.\n";

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::string(bitext_version()) == "0.1.0");
  bitext_parallel* p = nullptr;
  CHECK(bitext_parallel_load("/nonexistent/file.tsv", &p) == BITEXT_ERR_IO);
  CHECK(p == nullptr);
  CHECK(std::string(bitext_last_error()).find("/nonexistent/file.tsv") != std::string::npos);
  CHECK(bitext_parallel_load("x", nullptr) == BITEXT_ERR_INVALID_ARGUMENT);
  bitext_engine e;
  CHECK(bitext_engine_parse("bogus", &e) == BITEXT_ERR_INVALID_ARGUMENT);
  CHECK(bitext_engine_parse("nw-wavefront", &e) == BITEXT_OK);
  CHECK(e == BITEXT_ENGINE_NW_WAVEFRONT);
  CHECK(std::string(bitext_engine_name(BITEXT_ENGINE_ASTAR)) == "astar");
  bitext_corpus_free(nullptr);
}

TEST_CASE("figure fixture through the C API") {
  const char* rows[] = {"a", "d", "c", "d", "e"};
  const char* cols[] = {"a", "d", "e", "g", "f"};
  bitext_matrix* m = nullptr;
  REQUIRE(bitext_matrix_symbols(rows, 5, cols, 5, &m) == BITEXT_OK);
  bitext_mining_config c;
  bitext_mining_config_default(&c);
  CHECK(c.threshold == 0.5);
  CHECK(c.gap_penalty == 2.0);
  c.mismatch_cost = -0.5;
  c.gap_penalty = 0.5;

  bitext_alignment* a = nullptr;
  REQUIRE(bitext_align(m, &c, BITEXT_ENGINE_NW, &a) == BITEXT_OK);
  char buf[128];
  size_t needed = 0;
  REQUIRE(bitext_alignment_render(a, rows, cols, buf, sizeof buf, &needed) == BITEXT_OK);
  CHECK(std::string(buf) == "a, d, -, -, e, g, f\na, d, c, d, e, -, -");
  CHECK(needed == std::strlen(buf) + 1);
  CHECK(bitext_alignment_step_count(a) == 7);
  bitext_step_kind kind;
  size_t i = 0, j = 0;
  REQUIRE(bitext_alignment_step(a, 2, &kind, &i, &j) == BITEXT_OK);
  CHECK(kind == BITEXT_STEP_GAP_SOURCE);
  CHECK(i == 2);
  CHECK(j == SIZE_MAX);
  CHECK(bitext_alignment_step(a, 99, &kind, &i, &j) == BITEXT_ERR_INVALID_ARGUMENT);
  bitext_alignment_free(a);

  REQUIRE(bitext_align(m, &c, BITEXT_ENGINE_ASTAR_UNCONSTRAINED, &a) == BITEXT_OK);
  REQUIRE(bitext_alignment_render(a, rows, cols, buf, sizeof buf, nullptr) == BITEXT_OK);
  CHECK(std::string(buf) == "a, d, a, d, e, g, f\na, d, c, d, e, -, -");
  // A short buffer is truncated but terminated.
  char small[5];
  REQUIRE(bitext_alignment_render(a, rows, cols, small, sizeof small, &needed) == BITEXT_OK);
  CHECK(std::string(small) == "a, d");
  bitext_alignment_free(a);

  c.workers = 0;
  CHECK(bitext_align(m, &c, BITEXT_ENGINE_NW, &a) == BITEXT_ERR_INVALID_ARGUMENT);
  bitext_matrix_free(m);

  const double bad[] = {2.0};
  CHECK(bitext_matrix_create(1, 1, bad, &m) == BITEXT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("full pipeline through the C API") {
  Scratch s;
  const std::string parallel = s.file("parallel.tsv", kParallel);
  const std::string src = s.file("src.tsv",
                                 "p1\tKot\tKota psa. Kob koc kod. Kod kota.\n"
                                 "p2\tPies\tKosa koc.\n");
  const std::string tgt = s.file("tgt.tsv",
                                 "e1\tCat\tWuta wusa. Wub wuc wud. Wud wuta.\n"
                                 "e2\tDog\tWusa wuc.\n");
  const std::string links = s.file("links.tsv", "Kot\tCat\nPies\tDog\nKon\tHorse\n");

  bitext_parallel* par = nullptr;
  REQUIRE(bitext_parallel_load(parallel.c_str(), &par) == BITEXT_OK);
  CHECK(bitext_parallel_size(par) == 6);

  bitext_lexicon* lex = nullptr;
  REQUIRE(bitext_lexicon_build(par, 10, &lex) == BITEXT_OK);
  CHECK(bitext_lexicon_entry_count(lex) > 0);
  CHECK(bitext_lexicon_build(par, 0, &lex) == BITEXT_ERR_INVALID_ARGUMENT);
  CHECK(lex == nullptr);
  REQUIRE(bitext_lexicon_build(par, 10, &lex) == BITEXT_OK);
  const std::string titles = s.file("titles.tsv", "Kot\tCat\nNew York\tNowy Jork\n");
  size_t merged = 0, skipped = 0;
  REQUIRE(bitext_lexicon_merge_titles(lex, titles.c_str(), &merged, &skipped) == BITEXT_OK);
  CHECK(merged == 1);
  CHECK(skipped == 1);
  CHECK(bitext_lexicon_probability(lex, "kot", "cat") > 0.0);
  REQUIRE(bitext_lexicon_save(lex, s.path("lex.tsv").c_str()) == BITEXT_OK);

  bitext_model* model = nullptr;
  double accuracy = 0;
  REQUIRE(bitext_model_train(par, lex, 20, 42, &model, &accuracy) == BITEXT_OK);
  CHECK(accuracy >= 0.9);
  double sim = -1;
  REQUIRE(bitext_model_similarity(model, lex, "Kota psa.", "Wuta wusa.", &sim) == BITEXT_OK);
  CHECK(sim >= 0.0);
  CHECK(sim <= 1.0);
  CHECK(bitext_model_similarity(model, lex, "...", "Wuta.", &sim) == BITEXT_ERR_DATA);
  REQUIRE(bitext_model_save(model, s.path("model.json").c_str()) == BITEXT_OK);
  bitext_model* reloaded = nullptr;
  REQUIRE(bitext_model_load(s.path("model.json").c_str(), &reloaded) == BITEXT_OK);

  bitext_corpus* corpus = nullptr;
  size_t skip = 0, dup = 0;
  REQUIRE(bitext_corpus_ingest(src.c_str(), "pl", tgt.c_str(), "en", links.c_str(), &corpus,
                               &skip, &dup) == BITEXT_OK);
  CHECK(bitext_corpus_size(corpus) == 2);
  CHECK(skip == 1);
  CHECK(std::string(bitext_corpus_topic(corpus, 1)) == "Pies");
  REQUIRE(bitext_corpus_save(corpus, s.path("corpus").c_str()) == BITEXT_OK);
  bitext_corpus* loaded = nullptr;
  REQUIRE(bitext_corpus_load(s.path("corpus").c_str(), &loaded) == BITEXT_OK);
  CHECK(bitext_corpus_size(loaded) == 2);

  bitext_mining_config c;
  bitext_mining_config_default(&c);
  bitext_bitext* mined = nullptr;
  REQUIRE(bitext_mine(reloaded, lex, loaded, &c, BITEXT_ENGINE_NW, &mined) == BITEXT_OK);
  CHECK(bitext_bitext_size(mined) == 4);
  CHECK(bitext_bitext_failure_count(mined) == 0);
  double score = 0;
  const char* a = nullptr;
  const char* b = nullptr;
  REQUIRE(bitext_bitext_entry(mined, 0, &score, &a, &b) == BITEXT_OK);
  CHECK(std::string(a) == "Kota psa.");
  CHECK(std::string(b) == "Wuta wusa.");
  bitext_bitext_free(mined);
  CHECK(bitext_mine(reloaded, lex, loaded, &c, BITEXT_ENGINE_ASTAR_UNCONSTRAINED, &mined) ==
        BITEXT_ERR_INVALID_ARGUMENT);
  REQUIRE(bitext_mine(reloaded, lex, loaded, &c, BITEXT_ENGINE_NW, &mined) == BITEXT_OK);
  REQUIRE(bitext_bitext_save(mined, s.path("out.tsv").c_str()) == BITEXT_OK);
  bitext_bitext* back = nullptr;
  REQUIRE(bitext_bitext_load(s.path("out.tsv").c_str(), &back) == BITEXT_OK);
  uint64_t pairs = 0, su = 0, tu = 0;
  REQUIRE(bitext_bitext_stats(back, &pairs, &su, &tu) == BITEXT_OK);
  CHECK(pairs == 4);
  CHECK(su == 6);
  CHECK(tu == 5);

  const std::string ref = s.file("ref.tsv", "Kot\t0\t0\nKot\t1\t1\nKot\t2\t2\n");
  bitext_tuning_samples* samples = nullptr;
  REQUIRE(bitext_tuning_samples_load(loaded, ref.c_str(), &samples) == BITEXT_OK);
  CHECK(bitext_tuning_samples_size(samples) == 1);
  bitext_tuning_result* tuned = nullptr;
  REQUIRE(bitext_tune(reloaded, lex, samples, &c, 10, 42, BITEXT_ENGINE_NW, &tuned) == BITEXT_OK);
  CHECK(bitext_tuning_result_agreement(tuned) == 100.0);
  CHECK(bitext_tuning_result_trials(tuned) == 10);
  REQUIRE(bitext_tuning_result_save(tuned, s.path("report.json").c_str()) == BITEXT_OK);
  const std::string unknown = s.file("unknown.tsv", "Nope\t0\t0\n");
  bitext_tuning_samples* none = nullptr;
  CHECK(bitext_tuning_samples_load(loaded, unknown.c_str(), &none) == BITEXT_ERR_DATA);
  CHECK(std::string(bitext_last_error()).find("Nope") != std::string::npos);

  bitext_manifest* man = nullptr;
  REQUIRE(bitext_manifest_create("test", &man) == BITEXT_OK);
  CHECK(bitext_manifest_set_param(man, "k", "v") == BITEXT_OK);
  CHECK(bitext_manifest_add_input(man, parallel.c_str()) == BITEXT_OK);
  CHECK(bitext_manifest_add_input(man, s.path("missing").c_str()) == BITEXT_ERR_IO);
  bitext_manifest_set_wall_time(man, 5);
  CHECK(bitext_manifest_write(man, s.path("manifest.json").c_str()) == BITEXT_OK);

  bitext_manifest_free(man);
  bitext_tuning_result_free(tuned);
  bitext_tuning_samples_free(samples);
  bitext_bitext_free(back);
  bitext_bitext_free(mined);
  bitext_corpus_free(loaded);
  bitext_corpus_free(corpus);
  bitext_model_free(reloaded);
  bitext_model_free(model);
  bitext_lexicon_free(lex);
  bitext_parallel_free(par);
}
