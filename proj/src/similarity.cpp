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

#include "bitext/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bitext/error.hpp"
#include "bitext/text.hpp"
#include "random.hpp"
#include "tsv.hpp"

namespace bitext {
namespace {

using json = nlohmann::json;

double clip_ratio(double num, double den) {
  return std::clamp(num / den, 0.0, kRatioClip);
}

// Platt scaling as in libsvm's sigmoid_train: Newton's method with
// backtracking on the regularized targets. Returns (A, B) for
// P = 1 / (1 + exp(A f + B)).
std::pair<double, double> fit_sigmoid(const std::vector<double>& margins,
                                      const std::vector<int>& labels) {
  double prior1 = 0, prior0 = 0;
  for (int y : labels) (y > 0 ? prior1 : prior0) += 1;

  constexpr int kMaxIter = 100;
  constexpr double kMinStep = 1e-10;
  constexpr double kSigma = 1e-12;
  constexpr double kEps = 1e-5;
  const double hi_target = (prior1 + 1.0) / (prior1 + 2.0);
  const double lo_target = 1.0 / (prior0 + 2.0);
  const std::size_t n = margins.size();
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = labels[i] > 0 ? hi_target : lo_target;

  double a = 0.0;
  double b = std::log((prior0 + 1.0) / (prior1 + 1.0));
  auto objective = [&](double aa, double bb) {
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fapb = margins[i] * aa + bb;
      f += fapb >= 0 ? t[i] * fapb + std::log1p(std::exp(-fapb))
                     : (t[i] - 1) * fapb + std::log1p(std::exp(fapb));
    }
    return f;
  };
  double fval = objective(a, b);

  for (int iter = 0; iter < kMaxIter; ++iter) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fapb = margins[i] * a + b;
      double p, q;
      if (fapb >= 0) {
        p = std::exp(-fapb) / (1.0 + std::exp(-fapb));
        q = 1.0 / (1.0 + std::exp(-fapb));
      } else {
        p = 1.0 / (1.0 + std::exp(fapb));
        q = std::exp(fapb) / (1.0 + std::exp(fapb));
      }
      const double d2 = p * q;
      h11 += margins[i] * margins[i] * d2;
      h22 += d2;
      h21 += margins[i] * d2;
      const double d1 = t[i] - p;
      g1 += margins[i] * d1;
      g2 += d1;
    }
    if (std::fabs(g1) < kEps && std::fabs(g2) < kEps) break;

    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;

    double step = 1.0;
    while (step >= kMinStep) {
      const double na = a + step * da;
      const double nb = b + step * db;
      const double nf = objective(na, nb);
      if (nf < fval + 0.0001 * step * gd) {
        a = na;
        b = nb;
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < kMinStep) break;
  }
  return {a, b};
}

FeatureVector standardize(const SimilarityModel& m, const FeatureVector& f) {
  FeatureVector z;
  for (std::size_t k = 0; k < kFeatureCount; ++k)
    z[k] = (f[k] - m.feature_means[k]) / m.feature_scales[k];
  return z;
}

double dot(const std::array<double, kFeatureCount>& w, const FeatureVector& z) {
  double s = 0.0;
  for (std::size_t k = 0; k < kFeatureCount; ++k) s += w[k] * z[k];
  return s;
}

std::array<double, kFeatureCount> read_vector(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != kFeatureCount)
    throw Error(ErrorCode::kParse, std::string("model field ") + key +
                                       " must hold 6 numbers");
  std::array<double, kFeatureCount> out{};
  for (std::size_t k = 0; k < kFeatureCount; ++k) out[k] = v[k].get<double>();
  return out;
}

}  // namespace

TokenizedSentence TokenizedSentence::from(std::string_view sentence) {
  return {tokenize(sentence), codepoint_count(trim(sentence))};
}

FeatureVector extract_features(const TokenizedSentence& source,
                               const TokenizedSentence& target,
                               const Lexicon& lexicon) {
  if (source.tokens.empty() || target.tokens.empty()) {
    throw Error(ErrorCode::kData, "untokenizable sentence");
  }
  const std::set<std::string_view> src_set(source.tokens.begin(), source.tokens.end());
  const std::set<std::string_view> tgt_set(target.tokens.begin(), target.tokens.end());

  // Best probability of each source type among the target's tokens; 0 when
  // no entry links it to the target.
  std::vector<std::pair<std::string_view, double>> best;
  for (std::string_view s : src_set) {
    double b = 0.0;
    if (const Lexicon::Row* row = lexicon.row(s)) {
      for (std::string_view t : tgt_set) {
        const auto it = row->find(std::string(t));
        if (it != row->end()) b = std::max(b, it->second);
      }
    }
    best.emplace_back(s, b);
  }
  auto best_of = [&](std::string_view s) {
    return std::lower_bound(best.begin(), best.end(), s,
                            [](const auto& e, std::string_view k) { return e.first < k; })
        ->second;
  };

  std::size_t covered = 0;
  double prob_sum = 0.0;
  for (const auto& tok : source.tokens) {
    const double b = best_of(tok);
    if (b > 0.0) {
      ++covered;
      prob_sum += b;
    }
  }
  std::size_t target_covered = 0;
  for (const auto& tok : target.tokens) {
    for (std::string_view s : src_set) {
      if (lexicon.probability(s, tok) > 0.0) {
        ++target_covered;
        break;
      }
    }
  }
  std::size_t shared = 0;
  for (std::string_view s : src_set) shared += tgt_set.count(s);
  const std::size_t unioned = src_set.size() + tgt_set.size() - shared;

  const double ns = static_cast<double>(source.tokens.size());
  const double nt = static_cast<double>(target.tokens.size());
  return {
      clip_ratio(ns, nt),
      static_cast<double>(covered) / ns,
      static_cast<double>(target_covered) / nt,
      covered == 0 ? 0.0 : prob_sum / static_cast<double>(covered),
      clip_ratio(static_cast<double>(source.char_length),
                 static_cast<double>(std::max<std::size_t>(target.char_length, 1))),
      static_cast<double>(shared) / static_cast<double>(unioned),
  };
}

FeatureVector extract_features(std::string_view source, std::string_view target,
                               const Lexicon& lexicon) {
  return extract_features(TokenizedSentence::from(source),
                          TokenizedSentence::from(target), lexicon);
}

double SimilarityModel::margin(const FeatureVector& features) const {
  return dot(weights, standardize(*this, features)) + bias;
}

double SimilarityModel::probability(double d) const {
  const double x = sigmoid_a * d + sigmoid_b;
  // exp overflow yields inf, and 1/(1+inf) is the correct limit 0.
  const double p = 1.0 / (1.0 + std::exp(x));
  return std::clamp(std::isnan(p) ? 0.5 : p, 0.0, 1.0);
}

std::vector<SentencePair> make_negatives(std::span<const SentencePair> positives,
                                         std::uint64_t seed) {
  const std::size_t n = positives.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "at least 2 positive pairs are needed to draw negatives");
  }
  rnd::Engine rng(seed);
  std::vector<SentencePair> negatives;
  negatives.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1 + rnd::uniform_index(rng, n - 1)) % n;
    negatives.push_back({positives[i].source, positives[j].target});
  }
  return negatives;
}

SimilarityModel train_classifier(std::span<const SentencePair> positives,
                                 std::span<const SentencePair> negatives,
                                 const Lexicon& lexicon,
                                 const TrainingOptions& options) {
  if (positives.empty() || negatives.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "training needs at least one positive and one negative pair");
  }
  if (options.epochs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "epochs must be >= 1");
  }
  if (!(options.lambda > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be positive");
  }

  std::vector<FeatureVector> x;
  std::vector<int> y;
  x.reserve(positives.size() + negatives.size());
  for (const auto& p : positives) {
    x.push_back(extract_features(p.source, p.target, lexicon));
    y.push_back(1);
  }
  for (const auto& p : negatives) {
    x.push_back(extract_features(p.source, p.target, lexicon));
    y.push_back(-1);
  }
  const std::size_t n = x.size();

  SimilarityModel model;
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    double mean = 0.0;
    for (const auto& f : x) mean += f[k];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& f : x) var += (f[k] - mean) * (f[k] - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));
    model.feature_means[k] = mean;
    model.feature_scales[k] = sd > 1e-12 ? sd : 1.0;
  }
  std::vector<FeatureVector> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = standardize(model, x[i]);

  // Pegasos: the bias is treated as the weight of a constant feature.
  rnd::Engine rng(options.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::array<double, kFeatureCount> w{};
  double b = 0.0;
  std::uint64_t t = 0;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    rnd::shuffle(order, rng);
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (options.lambda * static_cast<double>(t));
      const double decay = 1.0 - 1.0 / static_cast<double>(t);
      const double m = y[i] * (dot(w, z[i]) + b);
      for (auto& wk : w) wk *= decay;
      b *= decay;
      if (m < 1.0) {
        for (std::size_t k = 0; k < kFeatureCount; ++k) w[k] += eta * y[i] * z[i][k];
        b += eta * y[i];
      }
    }
  }
  model.weights = w;
  model.bias = b;

  std::vector<double> margins(n);
  for (std::size_t i = 0; i < n; ++i) margins[i] = dot(w, z[i]) + b;
  auto [a, c] = fit_sigmoid(margins, y);
  model.sigmoid_a = a < 0.0 ? a : -1e-6;
  model.sigmoid_b = c;
  return model;
}

double similarity(const SimilarityModel& model, const TokenizedSentence& source,
                  const TokenizedSentence& target, const Lexicon& lexicon) {
  return model.probability(model.margin(extract_features(source, target, lexicon)));
}

double similarity(const SimilarityModel& model, std::string_view source,
                  std::string_view target, const Lexicon& lexicon) {
  return model.probability(model.margin(extract_features(source, target, lexicon)));
}

double classification_accuracy(const SimilarityModel& model, const Lexicon& lexicon,
                               std::span<const SentencePair> positives,
                               std::span<const SentencePair> negatives) {
  const std::size_t total = positives.size() + negatives.size();
  if (total == 0) return 0.0;
  std::size_t correct = 0;
  for (const auto& p : positives)
    correct += similarity(model, p.source, p.target, lexicon) >= 0.5;
  for (const auto& p : negatives)
    correct += similarity(model, p.source, p.target, lexicon) < 0.5;
  return static_cast<double>(correct) / static_cast<double>(total);
}

std::string model_to_json(const SimilarityModel& model) {
  json j;
  j["format"] = "bitext-similarity-model";
  j["version"] = kModelFormatVersion;
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  j["sigmoid_a"] = model.sigmoid_a;
  j["sigmoid_b"] = model.sigmoid_b;
  j["feature_means"] = model.feature_means;
  j["feature_scales"] = model.feature_scales;
  return j.dump(2) + "\n";
}

SimilarityModel model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("model is not valid JSON: ") + e.what());
  }
  try {
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw Error(ErrorCode::kParse,
                  "unsupported model version " + std::to_string(version));
    }
    SimilarityModel m;
    m.weights = read_vector(j, "weights");
    m.bias = j.at("bias").get<double>();
    m.sigmoid_a = j.at("sigmoid_a").get<double>();
    m.sigmoid_b = j.at("sigmoid_b").get<double>();
    m.feature_means = read_vector(j, "feature_means");
    m.feature_scales = read_vector(j, "feature_scales");
    for (double s : m.feature_scales) {
      if (!(s > 0.0)) throw Error(ErrorCode::kData, "feature scales must be positive");
    }
    if (!(m.sigmoid_a < 0.0)) throw Error(ErrorCode::kData, "sigmoid_a must be negative");
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad model: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const SimilarityModel& model) {
  auto out = tsv::open_output(path);
  out << model_to_json(model);
  tsv::finish_output(out, path);
}

SimilarityModel load_model(const std::filesystem::path& path) {
  auto in = tsv::open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace bitext
