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

#include "bitext/tuning.hpp"

#include <atomic>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "bitext/error.hpp"
#include "bitext/mining.hpp"
#include "bitext/text.hpp"
#include "random.hpp"
#include "tsv.hpp"

namespace bitext {
namespace {

struct Trial {
  double threshold;
  double gap_penalty;
};

struct TrialScore {
  double mean = 0.0;
  std::vector<double> per_sample;
};

void check_options(const MiningConfig& defaults, const TuningOptions& options,
                   std::size_t samples) {
  defaults.validate();
  auto fail = [](const char* what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (options.budget < 1) fail("tuning budget must be >= 1");
  if (samples == 0) fail("tuning needs at least one sample");
  if (!(options.threshold_min >= 0.0 && options.threshold_min <= options.threshold_max &&
        options.threshold_max <= 1.0)) {
    fail("threshold range must lie within [0,1]");
  }
  if (!(options.penalty_min >= 0.0 && options.penalty_min <= options.penalty_max &&
        std::isfinite(options.penalty_max))) {
    fail("penalty range must be finite and non-negative");
  }
  if (options.engine == Engine::kAstarUnconstrained) {
    fail("unconstrained engine is diagnostic-only");
  }
}

// Trial 0 is the defaults; every later trial consumes two draws, so a
// smaller budget always sees a prefix of a larger budget's trials.
std::vector<Trial> draw_trials(const MiningConfig& defaults, const TuningOptions& options) {
  std::vector<Trial> trials{{defaults.threshold, defaults.gap_penalty}};
  rnd::Engine rng(options.seed);
  for (std::size_t k = 1; k < options.budget; ++k) {
    const double u = rnd::uniform_unit(rng);
    const double v = rnd::uniform_unit(rng);
    trials.push_back(
        {options.threshold_min + u * (options.threshold_max - options.threshold_min),
         options.penalty_min + v * (options.penalty_max - options.penalty_min)});
  }
  return trials;
}

}  // namespace

double alignment_agreement(std::span<const IndexPair> candidate,
                           std::span<const IndexPair> reference) {
  if (reference.empty()) return candidate.empty() ? 100.0 : 0.0;
  if (candidate.empty()) return 0.0;

  std::vector<double> cells;
  cells.reserve(reference.size() * candidate.size());
  for (const IndexPair& r : reference)
    for (const IndexPair& c : candidate) cells.push_back(r == c ? 1.0 : 0.0);
  const ScoreMatrix equal(reference.size(), candidate.size(), std::move(cells));
  MiningConfig exact;
  exact.match_bonus = 1.0;
  exact.mismatch_cost = -1.0;
  exact.gap_penalty = 1.0;
  const Alignment a = nw_align(equal, exact);

  std::size_t matched = 0;
  for (const AlignmentStep& s : a.steps) {
    if (s.kind == StepKind::kMatch && equal.at(s.source, s.target) == 1.0) ++matched;
  }
  return 100.0 * static_cast<double>(matched) / static_cast<double>(reference.size());
}

std::vector<IndexPair> mined_indices(const ScoreMatrix& scores,
                                     const MiningConfig& config, Engine engine) {
  std::vector<IndexPair> out;
  const Alignment a = run_engine(engine, scores, config);
  for (const ScoredMatch& m : filter_by_threshold(scores, a, config.threshold))
    out.emplace_back(m.source, m.target);
  return out;
}

TuningResult tune_matrices(std::span<const ScoreMatrix> matrices,
                           std::span<const std::vector<IndexPair>> references,
                           const MiningConfig& defaults, const TuningOptions& options) {
  check_options(defaults, options, matrices.size());
  if (matrices.size() != references.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one reference list per matrix is required");
  }
  const std::vector<Trial> trials = draw_trials(defaults, options);
  std::vector<TrialScore> scores(trials.size());

  auto evaluate = [&](std::size_t k) {
    MiningConfig config = defaults;
    config.threshold = trials[k].threshold;
    config.gap_penalty = trials[k].gap_penalty;
    config.workers = 1;
    TrialScore& out = scores[k];
    double sum = 0.0;
    for (std::size_t s = 0; s < matrices.size(); ++s) {
      const auto candidate = mined_indices(matrices[s], config, options.engine);
      out.per_sample.push_back(alignment_agreement(candidate, references[s]));
      sum += out.per_sample.back();
    }
    out.mean = sum / static_cast<double>(matrices.size());
  };

  const std::size_t threads = std::min<std::size_t>(defaults.workers, trials.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < trials.size(); k = next++) evaluate(k);
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work);
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < trials.size(); ++k)
    if (scores[k].mean > scores[best].mean) best = k;

  TuningResult result;
  result.threshold = trials[best].threshold;
  result.gap_penalty = trials[best].gap_penalty;
  result.agreement = scores[best].mean;
  result.trials = trials.size();
  result.best_trial = best;
  result.default_agreement = scores[0].mean;
  result.per_sample_agreement = std::move(scores[best].per_sample);
  return result;
}

TuningResult tune(const SimilarityModel& model, const Lexicon& lexicon,
                  std::span<const TuningSample> samples, const MiningConfig& defaults,
                  const TuningOptions& options) {
  check_options(defaults, options, samples.size());
  // Similarities do not depend on the tuned parameters; score each sample once.
  std::vector<ScoreMatrix> matrices;
  std::vector<std::vector<IndexPair>> references;
  for (const TuningSample& s : samples) {
    try {
      matrices.push_back(build_score_matrix(model, lexicon, s.pair.source.sentences,
                                            s.pair.target.sentences));
    } catch (const Error& e) {
      throw Error(e.code(), "topic " + s.pair.topic_id + ": " + e.what());
    }
    references.push_back(s.reference);
  }
  return tune_matrices(matrices, references, defaults, options);
}

std::vector<ReferenceRow> read_references(const std::filesystem::path& path) {
  auto in = tsv::open_input(path);
  const std::string origin = path.string();
  std::vector<ReferenceRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = tsv::chomp(line);
    if (trim(view).empty()) continue;
    const auto f = tsv::split(view);
    std::optional<std::size_t> i, j;
    if (f.size() == 3) {
      i = tsv::parse_int<std::size_t>(trim(f[1]));
      j = tsv::parse_int<std::size_t>(trim(f[2]));
    }
    if (!i || !j) {
      throw Error(ErrorCode::kParse,
                  tsv::line_ref(origin, line_no) +
                      ": expected topic_id<TAB>source_index<TAB>target_index");
    }
    rows.push_back({std::string(trim(f[0])), *i, *j});
  }
  return rows;
}

std::vector<TuningSample> make_tuning_samples(std::span<const DocumentPair> corpus,
                                              std::span<const ReferenceRow> rows) {
  std::unordered_map<std::string_view, std::size_t> by_topic;
  for (std::size_t k = 0; k < corpus.size(); ++k) by_topic.emplace(corpus[k].topic_id, k);

  std::vector<TuningSample> samples;
  std::unordered_map<std::string_view, std::size_t> sample_of;
  for (const ReferenceRow& r : rows) {
    const auto it = by_topic.find(r.topic_id);
    if (it == by_topic.end()) {
      throw Error(ErrorCode::kData, "reference names unknown topic " + r.topic_id);
    }
    const DocumentPair& pair = corpus[it->second];
    auto [slot, fresh] = sample_of.try_emplace(pair.topic_id, samples.size());
    if (fresh) samples.push_back({pair, {}});
    auto& ref = samples[slot->second].reference;
    if (r.source_index >= pair.source.sentences.size() ||
        r.target_index >= pair.target.sentences.size()) {
      throw Error(ErrorCode::kData, "reference index out of range in topic " + r.topic_id);
    }
    if (!ref.empty() &&
        (r.source_index <= ref.back().first || r.target_index <= ref.back().second)) {
      throw Error(ErrorCode::kData,
                  "reference indices must increase in topic " + r.topic_id);
    }
    ref.emplace_back(r.source_index, r.target_index);
  }
  return samples;
}

std::string tuning_report_json(const TuningResult& result) {
  nlohmann::json j;
  j["threshold"] = result.threshold;
  j["gap_penalty"] = result.gap_penalty;
  j["agreement"] = result.agreement;
  j["trials"] = result.trials;
  j["best_trial"] = result.best_trial;
  j["default_agreement"] = result.default_agreement;
  j["improvement"] = result.agreement - result.default_agreement;
  j["per_sample_agreement"] = result.per_sample_agreement;
  return j.dump(2) + "\n";
}

}  // namespace bitext
