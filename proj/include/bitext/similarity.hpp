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

#ifndef BITEXT_SIMILARITY_HPP_
#define BITEXT_SIMILARITY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bitext/corpus.hpp"
#include "bitext/lexicon.hpp"

namespace bitext {

inline constexpr std::size_t kFeatureCount = 6;
inline constexpr double kRatioClip = 4.0;
inline constexpr double kHingeLambda = 1e-3;
inline constexpr int kModelFormatVersion = 1;

// Fixed order:
//   0 source/target token-count ratio, clipped to [0, 4]
//   1 share of source tokens with a lexicon translation in the target
//   2 share of target tokens with a lexicon translation in the source
//   3 mean best translation probability over the covered source tokens
//   4 source/target character-count ratio, clipped to [0, 4]
//   5 Jaccard overlap of the two token sets
using FeatureVector = std::array<double, kFeatureCount>;

struct TokenizedSentence {
  std::vector<std::string> tokens;
  std::size_t char_length = 0;

  static TokenizedSentence from(std::string_view sentence);
};

// Throws kData "untokenizable sentence" when either side has no tokens.
FeatureVector extract_features(const TokenizedSentence& source,
                               const TokenizedSentence& target,
                               const Lexicon& lexicon);
FeatureVector extract_features(std::string_view source,
                               std::string_view target,
                               const Lexicon& lexicon);

// Linear max-margin classifier over standardized features with a sigmoid
// mapping margins to [0, 1].
struct SimilarityModel {
  std::array<double, kFeatureCount> weights{};
  double bias = 0.0;
  double sigmoid_a = -1.0;
  double sigmoid_b = 0.0;
  std::array<double, kFeatureCount> feature_means{};
  std::array<double, kFeatureCount> feature_scales{1, 1, 1, 1, 1, 1};

  double margin(const FeatureVector& features) const;
  double probability(double margin) const;
};

struct TrainingOptions {
  int epochs = 20;
  std::uint64_t seed = 42;
  double lambda = kHingeLambda;
};

// Hinge-loss subgradient descent (step 1/(lambda t), seeded shuffling) then
// Platt calibration on the training margins. Deterministic for fixed inputs.
SimilarityModel train_classifier(std::span<const SentencePair> positives,
                                 std::span<const SentencePair> negatives,
                                 const Lexicon& lexicon,
                                 const TrainingOptions& options);

// One negative per positive: (source_i, target_j) with j != i drawn
// uniformly from a generator seeded with `seed`. Needs >= 2 positives.
std::vector<SentencePair> make_negatives(std::span<const SentencePair> positives,
                                         std::uint64_t seed);

double similarity(const SimilarityModel& model, std::string_view source,
                  std::string_view target, const Lexicon& lexicon);
double similarity(const SimilarityModel& model,
                  const TokenizedSentence& source,
                  const TokenizedSentence& target, const Lexicon& lexicon);

// Share of examples on the correct side of 0.5.
double classification_accuracy(const SimilarityModel& model,
                               const Lexicon& lexicon,
                               std::span<const SentencePair> positives,
                               std::span<const SentencePair> negatives);

std::string model_to_json(const SimilarityModel& model);
SimilarityModel model_from_json(std::string_view text);
void save_model(const std::filesystem::path& path,
                const SimilarityModel& model);
SimilarityModel load_model(const std::filesystem::path& path);

}  // namespace bitext

#endif  // BITEXT_SIMILARITY_HPP_
