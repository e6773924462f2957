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

#include "bitext/align.hpp"

#include <algorithm>
#include <barrier>
#include <cmath>
#include <cstdint>
#include <queue>
#include <thread>

#include "bitext/error.hpp"

namespace bitext {
namespace {

// (N+1) x (M+1) DP table, row-major.
class Table {
 public:
  Table(std::size_t rows, std::size_t cols)
      : cols_(cols + 1), cells_((rows + 1) * (cols + 1)) {}
  double& operator()(std::size_t m, std::size_t n) { return cells_[m * cols_ + n]; }
  double operator()(std::size_t m, std::size_t n) const { return cells_[m * cols_ + n]; }

 private:
  std::size_t cols_;
  std::vector<double> cells_;
};

void init_borders(Table& d, std::size_t rows, std::size_t cols, double p) {
  d(0, 0) = 0.0;
  // Accumulated rather than -k*p so traceback's d(m-1,0) - p == d(m,0)
  // holds exactly.
  for (std::size_t m = 1; m <= rows; ++m) d(m, 0) = d(m - 1, 0) - p;
  for (std::size_t n = 1; n <= cols; ++n) d(0, n) = d(0, n - 1) - p;
}

// The one recurrence both NW variants use, so their tables agree bit for bit.
inline void fill_cell(Table& d, const ScoreMatrix& s, const MiningConfig& c,
                      std::size_t m, std::size_t n) {
  const double diag = d(m - 1, n - 1) + c.cell_score(s.at(m - 1, n - 1));
  const double up = d(m - 1, n) - c.gap_penalty;
  const double left = d(m, n - 1) - c.gap_penalty;
  d(m, n) = std::max(diag, std::max(up, left));
}

Alignment traceback(const Table& d, const ScoreMatrix& s, const MiningConfig& c) {
  Alignment out;
  std::size_t m = s.rows(), n = s.cols();
  out.score = d(m, n);
  out.path.push_back({m, n});
  while (m > 0 || n > 0) {
    const double here = d(m, n);
    if (n == 0 || (m > 0 && here == d(m - 1, n) - c.gap_penalty)) {
      out.steps.push_back(AlignmentStep::gap_source(m - 1));
      --m;
    } else if (m > 0 && n > 0 &&
               here == d(m - 1, n - 1) + c.cell_score(s.at(m - 1, n - 1))) {
      out.steps.push_back(AlignmentStep::match(m - 1, n - 1));
      --m;
      --n;
    } else {
      out.steps.push_back(AlignmentStep::gap_target(n - 1));
      --n;
    }
    out.path.push_back({m, n});
  }
  std::reverse(out.steps.begin(), out.steps.end());
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

}  // namespace

ScoreMatrix::ScoreMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "score matrix must be non-empty");
  }
  if (cells_.size() != rows * cols) {
    throw Error(ErrorCode::kInvalidArgument, "score matrix size mismatch");
  }
  for (double v : cells_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "score matrix cell outside [0,1]");
    }
  }
}

void MiningConfig::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (!(threshold >= 0.0 && threshold <= 1.0)) fail("threshold must be in [0,1]");
  if (!(gap_penalty >= 0.0) || !std::isfinite(gap_penalty))
    fail("gap penalty must be finite and >= 0");
  if (!std::isfinite(match_bonus) || !std::isfinite(mismatch_cost))
    fail("match bonus and mismatch cost must be finite");
  if (match_bonus < mismatch_cost) fail("match bonus must be >= mismatch cost");
  if (workers < 1) fail("workers must be >= 1");
}

Alignment nw_align(const ScoreMatrix& scores, const MiningConfig& config) {
  config.validate();
  const std::size_t rows = scores.rows(), cols = scores.cols();
  Table d(rows, cols);
  init_borders(d, rows, cols, config.gap_penalty);
  for (std::size_t m = 1; m <= rows; ++m)
    for (std::size_t n = 1; n <= cols; ++n) fill_cell(d, scores, config, m, n);
  return traceback(d, scores, config);
}

Alignment nw_align_wavefront(const ScoreMatrix& scores,
                             const MiningConfig& config, unsigned workers) {
  config.validate();
  if (workers < 1) throw Error(ErrorCode::kInvalidArgument, "workers must be >= 1");
  const std::size_t rows = scores.rows(), cols = scores.cols();
  Table d(rows, cols);
  init_borders(d, rows, cols, config.gap_penalty);

  // Anti-diagonal k holds the cells with m + n = k.
  auto diagonal_range = [&](std::size_t k) {
    const std::size_t lo = k > cols ? k - cols : 1;
    const std::size_t hi = std::min(rows, k - 1);
    return std::pair{lo, hi};
  };
  const std::size_t last = rows + cols;
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(workers, std::min(rows, cols)));

  if (threads <= 1) {
    for (std::size_t k = 2; k <= last; ++k) {
      const auto [lo, hi] = diagonal_range(k);
      for (std::size_t m = lo; m <= hi; ++m) fill_cell(d, scores, config, m, k - m);
    }
    return traceback(d, scores, config);
  }

  // Every thread walks all diagonals, computing a contiguous slice of each;
  // the barrier keeps a diagonal from starting before the previous one is
  // complete.
  std::barrier sync(static_cast<std::ptrdiff_t>(threads));
  auto work = [&](unsigned w) {
    for (std::size_t k = 2; k <= last; ++k) {
      const auto [lo, hi] = diagonal_range(k);
      const std::size_t len = hi - lo + 1;
      const std::size_t begin = lo + len * w / threads;
      const std::size_t end = lo + len * (w + 1) / threads;
      for (std::size_t m = begin; m < end; ++m) fill_cell(d, scores, config, m, k - m);
      sync.arrive_and_wait();
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
    work(0);
  }
  return traceback(d, scores, config);
}

Alignment astar_align(const ScoreMatrix& scores, const MiningConfig& config,
                      bool constrained) {
  config.validate();
  const std::size_t rows = scores.rows(), cols = scores.cols();
  const std::size_t width = cols + 1;
  const std::size_t depth_cap = 2 * (rows + cols);
  const double best_step =
      std::max({config.match_bonus, config.mismatch_cost, -config.gap_penalty});
  auto heuristic = [&](std::size_t i, std::size_t j) {
    return static_cast<double>(std::max(rows - i, cols - j)) * best_step;
  };

  struct Record {
    std::size_t node;
    std::size_t parent;  // record index, kNoIndex for the root
    std::size_t depth;
    double g;
    AlignmentStep step;
  };
  struct Entry {
    double f;
    std::uint64_t seq;
    std::size_t record;
  };
  // Highest f first; among equal f the entry pushed first.
  auto worse = [](const Entry& a, const Entry& b) {
    return a.f != b.f ? a.f < b.f : a.seq > b.seq;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> frontier(worse);
  std::vector<Record> records;
  std::vector<bool> closed((rows + 1) * width, false);
  std::uint64_t seq = 0;

  records.push_back({0, kNoIndex, 0, 0.0, {}});
  frontier.push({heuristic(0, 0), seq++, 0});

  static constexpr int kMoves[8][2] = {{1, 1},  {1, 0},   {0, 1},  {1, -1},
                                       {-1, 1}, {-1, -1}, {-1, 0}, {0, -1}};
  const int move_count = constrained ? 3 : 8;
  const std::size_t goal = rows * width + cols;

  while (!frontier.empty()) {
    const Entry top = frontier.top();
    frontier.pop();
    const Record rec = records[top.record];
    if (closed[rec.node]) continue;
    closed[rec.node] = true;

    if (rec.node == goal) {
      Alignment out;
      out.score = rec.g;
      for (std::size_t r = top.record; r != kNoIndex; r = records[r].parent) {
        out.path.push_back({records[r].node / width, records[r].node % width});
        if (records[r].parent != kNoIndex) out.steps.push_back(records[r].step);
      }
      std::reverse(out.steps.begin(), out.steps.end());
      std::reverse(out.path.begin(), out.path.end());
      return out;
    }
    if (rec.depth == depth_cap) continue;

    const auto i = static_cast<std::ptrdiff_t>(rec.node / width);
    const auto j = static_cast<std::ptrdiff_t>(rec.node % width);
    for (int k = 0; k < move_count; ++k) {
      const int di = kMoves[k][0], dj = kMoves[k][1];
      const std::ptrdiff_t x = i + di, y = j + dj;
      if (x < 0 || y < 0 || x > static_cast<std::ptrdiff_t>(rows) ||
          y > static_cast<std::ptrdiff_t>(cols)) {
        continue;
      }
      // Backward moves never re-enter the border row or column; those
      // nodes stand for "nothing consumed yet" rather than a sentence.
      if ((di < 0 || dj < 0) && (x == 0 || y == 0)) continue;
      const auto ux = static_cast<std::size_t>(x), uy = static_cast<std::size_t>(y);
      const std::size_t node = ux * width + uy;
      if (closed[node]) continue;

      AlignmentStep step;
      double gain;
      if (di != 0 && dj != 0) {
        step = AlignmentStep::match(ux - 1, uy - 1);
        gain = config.cell_score(scores.at(ux - 1, uy - 1));
      } else if (di != 0) {
        step = AlignmentStep::gap_source(ux - 1);
        gain = -config.gap_penalty;
      } else {
        step = AlignmentStep::gap_target(uy - 1);
        gain = -config.gap_penalty;
      }
      const double g = rec.g + gain;
      records.push_back({node, top.record, rec.depth + 1, g, step});
      frontier.push({g + heuristic(ux, uy), seq++, records.size() - 1});
    }
  }
  throw Error(ErrorCode::kSearch, "unconstrained search diverged");
}

std::optional<Engine> parse_engine(std::string_view name) {
  if (name == "nw") return Engine::kNw;
  if (name == "nw-wavefront" || name == "nw_wavefront") return Engine::kNwWavefront;
  if (name == "astar" || name == "astar-constrained" || name == "astar_constrained")
    return Engine::kAstar;
  if (name == "astar-unconstrained" || name == "astar_unconstrained")
    return Engine::kAstarUnconstrained;
  return std::nullopt;
}

std::string_view engine_name(Engine engine) {
  switch (engine) {
    case Engine::kNw: return "nw";
    case Engine::kNwWavefront: return "nw-wavefront";
    case Engine::kAstar: return "astar";
    case Engine::kAstarUnconstrained: return "astar-unconstrained";
  }
  return "unknown";
}

Alignment run_engine(Engine engine, const ScoreMatrix& scores,
                     const MiningConfig& config) {
  switch (engine) {
    case Engine::kNw: return nw_align(scores, config);
    case Engine::kNwWavefront: return nw_align_wavefront(scores, config, config.workers);
    case Engine::kAstar: return astar_align(scores, config, true);
    case Engine::kAstarUnconstrained: return astar_align(scores, config, false);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown engine");
}

std::vector<ScoredMatch> filter_by_threshold(const ScoreMatrix& scores,
                                             const Alignment& alignment,
                                             double threshold) {
  std::vector<ScoredMatch> out;
  for (const AlignmentStep& step : alignment.steps) {
    if (step.kind != StepKind::kMatch) continue;
    const double s = scores.at(step.source, step.target);
    if (s >= threshold) out.push_back({s, step.source, step.target});
  }
  return out;
}

}  // namespace bitext
