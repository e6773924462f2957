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

#include "bitext/mining.hpp"

#include <atomic>
#include <optional>
#include <thread>

#include "bitext/error.hpp"

namespace bitext {

ScoreMatrix build_score_matrix(const SimilarityModel& model,
                               const Lexicon& lexicon,
                               std::span<const std::string> source_sentences,
                               std::span<const std::string> target_sentences) {
  if (source_sentences.empty() || target_sentences.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "both sentence lists must be non-empty");
  }
  std::vector<TokenizedSentence> src, tgt;
  src.reserve(source_sentences.size());
  tgt.reserve(target_sentences.size());
  for (const auto& s : source_sentences) src.push_back(TokenizedSentence::from(s));
  for (const auto& s : target_sentences) tgt.push_back(TokenizedSentence::from(s));

  std::vector<double> cells;
  cells.reserve(src.size() * tgt.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (std::size_t j = 0; j < tgt.size(); ++j) {
      try {
        cells.push_back(similarity(model, src[i], tgt[j], lexicon));
      } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " at cell (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  return ScoreMatrix(src.size(), tgt.size(), std::move(cells));
}

std::vector<BitextEntry> mine_document_pair(const SimilarityModel& model,
                                            const Lexicon& lexicon,
                                            const DocumentPair& pair,
                                            const MiningConfig& config,
                                            Engine engine) {
  if (engine == Engine::kAstarUnconstrained) {
    throw Error(ErrorCode::kInvalidArgument, "unconstrained engine is diagnostic-only");
  }
  config.validate();
  try {
    const ScoreMatrix scores =
        build_score_matrix(model, lexicon, pair.source.sentences, pair.target.sentences);
    const Alignment alignment = run_engine(engine, scores, config);
    std::vector<BitextEntry> out;
    for (const ScoredMatch& m : filter_by_threshold(scores, alignment, config.threshold)) {
      out.push_back({m.score, pair.source.sentences[m.source],
                     pair.target.sentences[m.target]});
    }
    return out;
  } catch (const Error& e) {
    throw Error(e.code(), "topic " + pair.topic_id + ": " + e.what());
  }
}

MiningReport mine_corpus(const SimilarityModel& model, const Lexicon& lexicon,
                         std::span<const DocumentPair> pairs,
                         const MiningConfig& config, Engine engine) {
  config.validate();
  if (engine == Engine::kAstarUnconstrained) {
    throw Error(ErrorCode::kInvalidArgument, "unconstrained engine is diagnostic-only");
  }
  struct Slot {
    std::vector<BitextEntry> entries;
    std::optional<std::string> error;
  };
  std::vector<Slot> slots(pairs.size());

  // Parallelism is across pairs here, so each alignment runs single-threaded.
  MiningConfig per_pair = config;
  per_pair.workers = 1;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < pairs.size(); k = next++) {
      try {
        slots[k].entries = mine_document_pair(model, lexicon, pairs[k], per_pair, engine);
      } catch (const std::exception& e) {
        slots[k].error = e.what();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(config.workers, pairs.size());
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work);
  }

  MiningReport report;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (slots[k].error) {
      report.failures.push_back({pairs[k].topic_id, *slots[k].error});
      continue;
    }
    for (auto& e : slots[k].entries) report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace bitext
