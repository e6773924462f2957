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

#ifndef BITEXT_TUNING_HPP_
#define BITEXT_TUNING_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bitext/align.hpp"
#include "bitext/corpus.hpp"
#include "bitext/lexicon.hpp"
#include "bitext/similarity.hpp"

namespace bitext {

using IndexPair = std::pair<std::size_t, std::size_t>;

// A document pair with its human-judged (source, target) sentence matches.
struct TuningSample {
  DocumentPair pair;
  std::vector<IndexPair> reference;
};

struct TuningOptions {
  std::size_t budget = 100;
  std::uint64_t seed = 42;
  double threshold_min = 0.0;
  double threshold_max = 1.0;
  double penalty_min = 0.0;
  double penalty_max = 5.0;
  Engine engine = Engine::kNwWavefront;
};

struct TuningResult {
  double threshold = 0.0;
  double gap_penalty = 0.0;
  double agreement = 0.0;  // percent
  std::size_t trials = 0;
  std::size_t best_trial = 0;  // 0-based; trial 0 is the defaults
  double default_agreement = 0.0;
  std::vector<double> per_sample_agreement;
};

// Percentage of reference pairs that an exact-equality Needleman-Wunsch
// comparison (match +1, mismatch -1, gap 1) lines up with an equal
// candidate pair.
double alignment_agreement(std::span<const IndexPair> candidate,
                           std::span<const IndexPair> reference);

// Seeded random search over (threshold, gap_penalty). Trial 0 evaluates
// `defaults`; the others are drawn uniformly from the option ranges, so the
// trials for budget b are a prefix of those for any larger budget. Trials
// run on defaults.workers threads.
TuningResult tune(const SimilarityModel& model, const Lexicon& lexicon,
                  std::span<const TuningSample> samples,
                  const MiningConfig& defaults, const TuningOptions& options);

// Same search over precomputed similarity matrices.
TuningResult tune_matrices(std::span<const ScoreMatrix> matrices,
                           std::span<const std::vector<IndexPair>> references,
                           const MiningConfig& defaults,
                           const TuningOptions& options);

// The candidate list a configuration produces on one matrix.
std::vector<IndexPair> mined_indices(const ScoreMatrix& scores,
                                     const MiningConfig& config,
                                     Engine engine);

struct ReferenceRow {
  std::string topic_id;
  std::size_t source_index;
  std::size_t target_index;
};

// `topic_id<TAB>source_index<TAB>target_index`, 0-based.
std::vector<ReferenceRow> read_references(const std::filesystem::path& path);

// Groups rows by topic (first-appearance order) and checks them against the
// corpus: unknown topics, out-of-range or non-increasing indices throw kData.
std::vector<TuningSample> make_tuning_samples(std::span<const DocumentPair> corpus,
                                              std::span<const ReferenceRow> rows);

std::string tuning_report_json(const TuningResult& result);

}  // namespace bitext

#endif  // BITEXT_TUNING_HPP_
