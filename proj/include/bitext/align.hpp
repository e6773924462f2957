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

#ifndef BITEXT_ALIGN_HPP_
#define BITEXT_ALIGN_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace bitext {

// N x M similarities in [0, 1], row-major. Rows index source sentences.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  // Throws kInvalidArgument for empty dimensions, a size mismatch, or any
  // cell outside [0, 1].
  ScoreMatrix(std::size_t rows, std::size_t cols, std::vector<double> cells);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
  std::span<const double> cells() const { return cells_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> cells_;
};

struct MiningConfig {
  double threshold = 0.5;
  double gap_penalty = 2.0;
  double match_bonus = 1.0;
  double mismatch_cost = -1.0;
  unsigned workers = 1;

  // Throws kInvalidArgument unless threshold in [0,1], gap_penalty >= 0,
  // match_bonus >= mismatch_cost, all finite, workers >= 1.
  void validate() const;

  // Similarity 0 maps to mismatch_cost, 1 to match_bonus.
  double cell_score(double similarity) const {
    return mismatch_cost + similarity * (match_bonus - mismatch_cost);
  }
};

enum class StepKind { kMatch, kGapSource, kGapTarget };

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

// Match(i, j), GapSource(i) or GapTarget(j); the unused index is kNoIndex.
struct AlignmentStep {
  StepKind kind;
  std::size_t source = kNoIndex;
  std::size_t target = kNoIndex;

  static AlignmentStep match(std::size_t i, std::size_t j) {
    return {StepKind::kMatch, i, j};
  }
  static AlignmentStep gap_source(std::size_t i) {
    return {StepKind::kGapSource, i, kNoIndex};
  }
  static AlignmentStep gap_target(std::size_t j) {
    return {StepKind::kGapTarget, kNoIndex, j};
  }

  friend bool operator==(const AlignmentStep&, const AlignmentStep&) = default;
};

// A node (i, j) of the alignment lattice: i source and j target items are
// behind the path. Steps move between consecutive nodes.
struct LatticeNode {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const LatticeNode&, const LatticeNode&) = default;
};

struct Alignment {
  std::vector<AlignmentStep> steps;
  std::vector<LatticeNode> path;  // steps.size() + 1 nodes from (0,0) to (N,M)
  double score = 0.0;
};

// Sequential Needleman-Wunsch. Ties in the traceback prefer a source gap,
// then the diagonal, then a target gap.
Alignment nw_align(const ScoreMatrix& scores, const MiningConfig& config);

// Same result as nw_align, bit for bit. The table is filled one
// anti-diagonal at a time with the cells of each diagonal split across
// `workers` threads and a barrier between diagonals.
Alignment nw_align_wavefront(const ScoreMatrix& scores,
                             const MiningConfig& config, unsigned workers);

// Best-first search over the lattice. constrained: right/down/diagonal moves
// only, optimal (score equals nw_align). Unconstrained: moves may also go
// up or left, re-scoring the cells they enter; the search keeps one visit
// per node and returns the first path that reaches the goal. Throws kSearch
// "unconstrained search diverged" if no path fits in 2(N+M) moves.
Alignment astar_align(const ScoreMatrix& scores, const MiningConfig& config,
                      bool constrained);

enum class Engine { kNw, kNwWavefront, kAstar, kAstarUnconstrained };

std::optional<Engine> parse_engine(std::string_view name);
std::string_view engine_name(Engine engine);

Alignment run_engine(Engine engine, const ScoreMatrix& scores,
                     const MiningConfig& config);

struct ScoredMatch {
  double score;
  std::size_t source;
  std::size_t target;
  friend bool operator==(const ScoredMatch&, const ScoredMatch&) = default;
};

// Match steps whose raw similarity is >= threshold, in step order.
std::vector<ScoredMatch> filter_by_threshold(const ScoreMatrix& scores,
                                             const Alignment& alignment,
                                             double threshold);

}  // namespace bitext

#endif  // BITEXT_ALIGN_HPP_
