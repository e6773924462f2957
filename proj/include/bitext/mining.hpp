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

#ifndef BITEXT_MINING_HPP_
#define BITEXT_MINING_HPP_

#include <span>
#include <string>
#include <vector>

#include "bitext/align.hpp"
#include "bitext/corpus.hpp"
#include "bitext/lexicon.hpp"
#include "bitext/similarity.hpp"

namespace bitext {

// cell (i, j) = similarity(source[i], target[j]). An untokenizable sentence
// raises kData naming the first failing cell.
ScoreMatrix build_score_matrix(const SimilarityModel& model,
                               const Lexicon& lexicon,
                               std::span<const std::string> source_sentences,
                               std::span<const std::string> target_sentences);

// Score matrix -> engine -> threshold filter -> sentence texts. The
// unconstrained engine is rejected. Errors carry the pair's topic_id.
std::vector<BitextEntry> mine_document_pair(const SimilarityModel& model,
                                            const Lexicon& lexicon,
                                            const DocumentPair& pair,
                                            const MiningConfig& config,
                                            Engine engine);

struct PairFailure {
  std::string topic_id;
  std::string message;
};

struct MiningReport {
  std::vector<BitextEntry> entries;
  std::vector<PairFailure> failures;
};

// Mines pairs on config.workers threads. Entries are concatenated in input
// order; a failing pair is recorded and skipped.
MiningReport mine_corpus(const SimilarityModel& model, const Lexicon& lexicon,
                         std::span<const DocumentPair> pairs,
                         const MiningConfig& config, Engine engine);

}  // namespace bitext

#endif  // BITEXT_MINING_HPP_
