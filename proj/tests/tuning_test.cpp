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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bitext/error.hpp"
#include "bitext/mining.hpp"
#include "bitext/tuning.hpp"
#include "testkit.hpp"

using namespace bitext;

namespace {

using Pairs = std::vector<IndexPair>;

ScoreMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> cells(n * m);
  for (auto& c : cells) c = u(rng);
  return ScoreMatrix(n, m, std::move(cells));
}

}  // namespace

TEST_CASE("alignment_agreement fixtures") {
  CHECK(alignment_agreement(Pairs{{0, 0}, {1, 1}}, Pairs{{0, 0}, {1, 1}}) == 100.0);
  CHECK(alignment_agreement(Pairs{}, Pairs{{0, 0}}) == 0.0);
  CHECK(alignment_agreement(Pairs{{0, 0}, {2, 2}}, Pairs{{0, 0}, {1, 1}, {2, 2}}) ==
        doctest::Approx(200.0 / 3.0));
  CHECK(alignment_agreement(Pairs{}, Pairs{}) == 100.0);
  CHECK(alignment_agreement(Pairs{{0, 0}}, Pairs{}) == 0.0);
  // Extra candidate pairs do not cost recall.
  CHECK(alignment_agreement(Pairs{{0, 0}, {1, 2}, {2, 3}}, Pairs{{0, 0}, {2, 3}}) == 100.0);
}

TEST_CASE("alignment_agreement is bounded and 100 only on full recall") {
  std::mt19937_64 rng(8);
  auto random_pairs = [&] {
    Pairs p;
    std::size_t i = 0, j = 0;
    for (int k = 0, n = static_cast<int>(rng() % 8); k < n; ++k) {
      i += rng() % 2;
      j += rng() % 2;
      p.emplace_back(i++, j++);
    }
    return p;
  };
  for (int trial = 0; trial < 500; ++trial) {
    const auto cand = random_pairs(), ref = random_pairs();
    const double a = alignment_agreement(cand, ref);
    CHECK(a >= 0.0);
    CHECK(a <= 100.0);
    if (!ref.empty()) CHECK(alignment_agreement(ref, ref) == 100.0);
    if (a == 100.0 && !ref.empty()) {
      for (const auto& r : ref) CHECK(std::find(cand.begin(), cand.end(), r) != cand.end());
    }
  }
}

TEST_CASE("tune returns the defaults when they reproduce the reference") {
  std::mt19937_64 rng(9);
  std::vector<ScoreMatrix> mats;
  std::vector<Pairs> refs;
  const MiningConfig defaults;
  for (int k = 0; k < 5; ++k) {
    mats.push_back(random_matrix(rng, 6, 7));
    refs.push_back(mined_indices(mats.back(), defaults, Engine::kNw));
  }
  for (std::size_t budget : {1u, 10u, 50u}) {
    TuningOptions opt;
    opt.budget = budget;
    opt.engine = Engine::kNw;
    const auto r = tune_matrices(mats, refs, defaults, opt);
    CHECK(r.agreement == 100.0);
    CHECK(r.default_agreement == 100.0);
    CHECK(r.best_trial == 0);
    CHECK(r.threshold == defaults.threshold);
    CHECK(r.gap_penalty == defaults.gap_penalty);
    CHECK(r.trials == budget);
  }
}

TEST_CASE("tune is deterministic, worker-invariant and monotone in budget") {
  std::mt19937_64 rng(10);
  std::vector<ScoreMatrix> mats;
  std::vector<Pairs> refs;
  MiningConfig planted;
  planted.threshold = 0.7;
  planted.gap_penalty = 0.3;
  for (int k = 0; k < 4; ++k) {
    mats.push_back(random_matrix(rng, 8, 9));
    refs.push_back(mined_indices(mats.back(), planted, Engine::kNw));
  }
  MiningConfig defaults;
  TuningOptions opt;
  opt.engine = Engine::kNw;
  double last = -1;
  for (std::size_t budget : {1u, 5u, 20u, 80u}) {
    opt.budget = budget;
    defaults.workers = 1;
    const auto a = tune_matrices(mats, refs, defaults, opt);
    defaults.workers = 3;
    const auto b = tune_matrices(mats, refs, defaults, opt);
    CHECK(a.threshold == b.threshold);
    CHECK(a.gap_penalty == b.gap_penalty);
    CHECK(a.agreement == b.agreement);
    CHECK(a.best_trial == b.best_trial);
    CHECK(a.per_sample_agreement == b.per_sample_agreement);
    CHECK(a.agreement >= a.default_agreement);
    CHECK(a.agreement >= last);
    CHECK(a.threshold >= 0.0);
    CHECK(a.threshold <= 1.0);
    CHECK(a.gap_penalty >= 0.0);
    CHECK(a.gap_penalty <= 5.0);
    last = a.agreement;
  }
}

TEST_CASE("tune validates its inputs") {
  std::mt19937_64 rng(11);
  std::vector<ScoreMatrix> mats{random_matrix(rng, 2, 2)};
  std::vector<Pairs> refs{Pairs{}};
  TuningOptions opt;
  opt.budget = 0;
  CHECK_THROWS_AS(tune_matrices(mats, refs, MiningConfig{}, opt), Error);
  opt.budget = 5;
  CHECK_THROWS_AS(tune_matrices({}, {}, MiningConfig{}, opt), Error);
}

TEST_CASE("tune end to end on documents") {
  constexpr std::size_t kVocab = 50;
  const Lexicon lex = testkit::identity_lexicon(kVocab);
  const SimilarityModel model = testkit::trained_model(lex, kVocab, 3);
  testkit::Generator gen(kVocab, 12);
  std::vector<TuningSample> samples;
  for (int k = 0; k < 3; ++k) {
    TuningSample s{gen.document("doc" + std::to_string(k), 6), {}};
    s.pair.target.sentences.insert(s.pair.target.sentences.begin() + 2, gen.target_noise());
    for (std::size_t i = 0; i < 6; ++i) s.reference.emplace_back(i, i < 2 ? i : i + 1);
    samples.push_back(std::move(s));
  }
  TuningOptions opt;
  opt.budget = 30;
  const auto r = tune(model, lex, samples, MiningConfig{}, opt);
  CHECK(r.agreement == 100.0);
  CHECK(r.per_sample_agreement.size() == 3);
}

TEST_CASE("reference rows become samples") {
  testkit::Generator gen(20, 13);
  std::vector<DocumentPair> corpus{gen.document("A", 3), gen.document("B", 2)};
  std::vector<ReferenceRow> rows{{"B", 0, 0}, {"A", 0, 1}, {"B", 1, 1}};
  const auto samples = make_tuning_samples(corpus, rows);
  REQUIRE(samples.size() == 2);
  CHECK(samples[0].pair.topic_id == "B");
  CHECK(samples[0].reference == Pairs{{0, 0}, {1, 1}});
  CHECK(samples[1].reference == Pairs{{0, 1}});

  const std::vector<ReferenceRow> unknown{{"Z", 0, 0}};
  CHECK_THROWS_WITH(make_tuning_samples(corpus, unknown), "reference names unknown topic Z");
  const std::vector<ReferenceRow> range{{"B", 5, 0}};
  CHECK_THROWS_AS(make_tuning_samples(corpus, range), Error);
  const std::vector<ReferenceRow> order{{"A", 1, 1}, {"A", 0, 2}};
  CHECK_THROWS_AS(make_tuning_samples(corpus, order), Error);
}

TEST_CASE("read_references and the report") {
  testkit::TempDir dir("refs");
  testkit::write_file(dir / "ref.tsv", "A\t0\t1\n\nB\t2\t3\n");
  const auto rows = read_references(dir / "ref.tsv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].topic_id == "B");
  CHECK(rows[1].target_index == 3);
  testkit::write_file(dir / "bad.tsv", "A\tx\t1\n");
  CHECK_THROWS_AS(read_references(dir / "bad.tsv"), Error);

  TuningResult r;
  r.threshold = 0.25;
  r.agreement = 90;
  r.default_agreement = 80;
  r.trials = 3;
  r.per_sample_agreement = {90};
  const std::string json = tuning_report_json(r);
  CHECK(json.find("\"threshold\": 0.25") != std::string::npos);
  CHECK(json.find("\"improvement\": 10.0") != std::string::npos);
  CHECK(json.find("\"per_sample_agreement\"") != std::string::npos);
}
