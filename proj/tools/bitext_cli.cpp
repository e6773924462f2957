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

// bitext: command-line front end over the C API.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bitext/bitext.h"

namespace {

// Usage errors exit with 2, runtime failures with 1.
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RuntimeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(bitext_status status) {
  if (status == BITEXT_OK) return;
  if (status == BITEXT_ERR_INVALID_ARGUMENT) throw UsageError(bitext_last_error());
  throw RuntimeFailure(bitext_last_error());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Owned = std::unique_ptr<T, Deleter<T, Free>>;

using Corpus = Owned<bitext_corpus, bitext_corpus_free>;
using Parallel = Owned<bitext_parallel, bitext_parallel_free>;
using Lexicon = Owned<bitext_lexicon, bitext_lexicon_free>;
using Model = Owned<bitext_model, bitext_model_free>;
using Bitext = Owned<bitext_bitext, bitext_bitext_free>;
using Samples = Owned<bitext_tuning_samples, bitext_tuning_samples_free>;
using TuningResult = Owned<bitext_tuning_result, bitext_tuning_result_free>;
using Matrix = Owned<bitext_matrix, bitext_matrix_free>;
using AlignmentHandle = Owned<bitext_alignment, bitext_alignment_free>;
using Manifest = Owned<bitext_manifest, bitext_manifest_free>;

template <typename Handle, typename Fn>
Handle make(Fn&& fn) {
  typename Handle::pointer raw = nullptr;
  check(fn(&raw));
  return Handle(raw);
}

// Locale-independent decimal rendering.
std::string fixed(double value, int precision) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

std::string shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

struct Globals {
  std::uint64_t seed = 42;
  unsigned workers = 1;
  bool verbose = false;
};

struct MiningFlags {
  double threshold = 0.5;
  double gap_penalty = 2.0;
  double match_bonus = 1.0;
  double mismatch_cost = -1.0;
  std::string engine = "nw-wavefront";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--threshold", threshold, "minimum similarity to emit a pair")
        ->capture_default_str();
    cmd->add_option("--gap-penalty", gap_penalty, "penalty per gap step")
        ->capture_default_str();
    cmd->add_option("--match-bonus", match_bonus, "score of similarity 1")
        ->capture_default_str();
    cmd->add_option("--mismatch-cost", mismatch_cost, "score of similarity 0")
        ->capture_default_str();
    cmd->add_option("--engine", engine, "nw, nw-wavefront or astar")
        ->capture_default_str();
  }

  bitext_mining_config config(unsigned workers) const {
    return {threshold, gap_penalty, match_bonus, mismatch_cost, workers};
  }

  // Mining engines only; the unconstrained search is a bench diagnostic.
  bitext_engine mining_engine() const {
    bitext_engine e;
    if (bitext_engine_parse(engine.c_str(), &e) != BITEXT_OK) {
      throw UsageError("unknown engine " + engine + " (expected nw, nw-wavefront or astar)");
    }
    if (e == BITEXT_ENGINE_ASTAR_UNCONSTRAINED) {
      throw UsageError("unconstrained engine is diagnostic-only");
    }
    return e;
  }

  void record(bitext_manifest* m) const {
    check(bitext_manifest_set_param(m, "threshold", shortest(threshold).c_str()));
    check(bitext_manifest_set_param(m, "gap_penalty", shortest(gap_penalty).c_str()));
    check(bitext_manifest_set_param(m, "match_bonus", shortest(match_bonus).c_str()));
    check(bitext_manifest_set_param(m, "mismatch_cost", shortest(mismatch_cost).c_str()));
    check(bitext_manifest_set_param(m, "engine", engine.c_str()));
  }
};

// Collects a manifest while a command runs and writes it at the end.
class Run {
 public:
  Run(const char* command, const Globals& g)
      : manifest_(make<Manifest>(
            [&](bitext_manifest** out) { return bitext_manifest_create(command, out); })),
        start_(std::chrono::steady_clock::now()) {
    param("seed", std::to_string(g.seed));
    param("workers", std::to_string(g.workers));
  }

  void param(const char* key, const std::string& value) {
    check(bitext_manifest_set_param(manifest_.get(), key, value.c_str()));
  }
  void input(const std::string& path) {
    check(bitext_manifest_add_input(manifest_.get(), path.c_str()));
  }
  void corpus_inputs(const std::string& dir) {
    input(dir + "/pairs.tsv");
    input(dir + "/sentences.tsv");
  }
  bitext_manifest* get() { return manifest_.get(); }

  void write(const std::string& path) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start_);
    bitext_manifest_set_wall_time(manifest_.get(), static_cast<std::uint64_t>(ms.count()));
    check(bitext_manifest_write(manifest_.get(), path.c_str()));
  }

 private:
  Manifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

// ---- ingest ----

struct IngestArgs {
  std::string source, target, links, out;
  std::string source_lang = "pl", target_lang = "en";
};

int cmd_ingest(const IngestArgs& a, const Globals& g) {
  Run run("ingest", g);
  run.param("source_lang", a.source_lang);
  run.param("target_lang", a.target_lang);
  run.input(a.source);
  run.input(a.target);
  run.input(a.links);
  std::size_t skipped = 0, duplicates = 0;
  Corpus corpus = make<Corpus>([&](bitext_corpus** out) {
    return bitext_corpus_ingest(a.source.c_str(), a.source_lang.c_str(), a.target.c_str(),
                                a.target_lang.c_str(), a.links.c_str(), out, &skipped,
                                &duplicates);
  });
  check(bitext_corpus_save(corpus.get(), a.out.c_str()));
  run.write(a.out + "/manifest.json");
  std::cout << bitext_corpus_size(corpus.get()) << " paired, " << skipped << " skipped, "
            << duplicates << " duplicates\n";
  return 0;
}

// ---- dict ----

struct DictArgs {
  std::string parallel, titles, out;
  int iterations = 5;
};

int cmd_dict(const DictArgs& a, const Globals& g) {
  Run run("dict", g);
  run.param("iterations", std::to_string(a.iterations));
  run.input(a.parallel);
  Parallel parallel = make<Parallel>(
      [&](bitext_parallel** out) { return bitext_parallel_load(a.parallel.c_str(), out); });
  Lexicon lexicon = make<Lexicon>([&](bitext_lexicon** out) {
    return bitext_lexicon_build(parallel.get(), a.iterations, out);
  });
  if (!a.titles.empty()) {
    run.input(a.titles);
    std::size_t merged = 0, skipped = 0;
    check(bitext_lexicon_merge_titles(lexicon.get(), a.titles.c_str(), &merged, &skipped));
    if (g.verbose) {
      std::cerr << "titles: " << merged << " merged, " << skipped << " skipped\n";
    }
  }
  check(bitext_lexicon_save(lexicon.get(), a.out.c_str()));
  run.write(a.out + ".manifest.json");
  std::cout << bitext_lexicon_entry_count(lexicon.get()) << " lexicon entries\n";
  return 0;
}

// ---- train ----

struct TrainArgs {
  std::string parallel, lexicon, out;
  int epochs = 20;
};

int cmd_train(const TrainArgs& a, const Globals& g) {
  Run run("train", g);
  run.param("epochs", std::to_string(a.epochs));
  run.input(a.parallel);
  run.input(a.lexicon);
  Parallel parallel = make<Parallel>(
      [&](bitext_parallel** out) { return bitext_parallel_load(a.parallel.c_str(), out); });
  Lexicon lexicon = make<Lexicon>(
      [&](bitext_lexicon** out) { return bitext_lexicon_load(a.lexicon.c_str(), out); });
  double accuracy = 0.0;
  Model model = make<Model>([&](bitext_model** out) {
    return bitext_model_train(parallel.get(), lexicon.get(), a.epochs, g.seed, out, &accuracy);
  });
  check(bitext_model_save(model.get(), a.out.c_str()));
  run.write(a.out + ".manifest.json");
  std::cout << "training accuracy: " << fixed(100.0 * accuracy, 2) << "%\n";
  return 0;
}

// ---- tune ----

struct TuneArgs {
  std::string corpus, model, lexicon, reference, out;
  std::size_t budget = 100;
  MiningFlags mining;
};

int cmd_tune(const TuneArgs& a, const Globals& g) {
  const bitext_engine engine = a.mining.mining_engine();
  const bitext_mining_config defaults = a.mining.config(g.workers);
  Run run("tune", g);
  a.mining.record(run.get());
  run.param("budget", std::to_string(a.budget));
  run.corpus_inputs(a.corpus);
  run.input(a.model);
  run.input(a.lexicon);
  run.input(a.reference);

  Corpus corpus = make<Corpus>(
      [&](bitext_corpus** out) { return bitext_corpus_load(a.corpus.c_str(), out); });
  Model model = make<Model>(
      [&](bitext_model** out) { return bitext_model_load(a.model.c_str(), out); });
  Lexicon lexicon = make<Lexicon>(
      [&](bitext_lexicon** out) { return bitext_lexicon_load(a.lexicon.c_str(), out); });
  Samples samples = make<Samples>([&](bitext_tuning_samples** out) {
    return bitext_tuning_samples_load(corpus.get(), a.reference.c_str(), out);
  });
  TuningResult result = make<TuningResult>([&](bitext_tuning_result** out) {
    return bitext_tune(model.get(), lexicon.get(), samples.get(), &defaults, a.budget, g.seed,
                       engine, out);
  });
  const bitext_tuning_result* r = result.get();
  if (!a.out.empty()) {
    check(bitext_tuning_result_save(r, a.out.c_str()));
    run.write(a.out + ".manifest.json");
  }
  const double agreement = bitext_tuning_result_agreement(r);
  const double base = bitext_tuning_result_default_agreement(r);
  std::cout << "threshold: " << fixed(bitext_tuning_result_threshold(r), 4) << "\n"
            << "gap penalty: " << fixed(bitext_tuning_result_gap_penalty(r), 4) << "\n"
            << "agreement: " << fixed(agreement, 2) << "%\n"
            << "default agreement: " << fixed(base, 2) << "%\n"
            << "improvement: " << fixed(agreement - base, 2) << " points\n"
            << "trials: " << bitext_tuning_result_trials(r) << " (best "
            << bitext_tuning_result_best_trial(r) << ")\n";
  return 0;
}

// ---- mine ----

struct MineArgs {
  std::string corpus, model, lexicon, out;
  MiningFlags mining;
};

int cmd_mine(const MineArgs& a, const Globals& g) {
  const bitext_engine engine = a.mining.mining_engine();
  const bitext_mining_config config = a.mining.config(g.workers);
  Run run("mine", g);
  a.mining.record(run.get());
  run.corpus_inputs(a.corpus);
  run.input(a.model);
  run.input(a.lexicon);

  Corpus corpus = make<Corpus>(
      [&](bitext_corpus** out) { return bitext_corpus_load(a.corpus.c_str(), out); });
  Model model = make<Model>(
      [&](bitext_model** out) { return bitext_model_load(a.model.c_str(), out); });
  Lexicon lexicon = make<Lexicon>(
      [&](bitext_lexicon** out) { return bitext_lexicon_load(a.lexicon.c_str(), out); });
  Bitext mined = make<Bitext>([&](bitext_bitext** out) {
    return bitext_mine(model.get(), lexicon.get(), corpus.get(), &config, engine, out);
  });
  check(bitext_bitext_save(mined.get(), a.out.c_str()));
  run.write(a.out + ".manifest.json");

  const std::size_t failures = bitext_bitext_failure_count(mined.get());
  std::cout << bitext_bitext_size(mined.get()) << " pairs mined from "
            << bitext_corpus_size(corpus.get()) << " documents, " << failures << " failed\n";
  for (std::size_t k = 0; k < failures; ++k) {
    std::cerr << "failed: " << bitext_bitext_failure_message(mined.get(), k) << "\n";
  }
  return failures == 0 ? 0 : kExitFailure;
}

// ---- stats ----

struct StatsArgs {
  std::string bitext, manifest;
};

int cmd_stats(const StatsArgs& a, const Globals& g) {
  Run run("stats", g);
  run.input(a.bitext);
  Bitext b = make<Bitext>(
      [&](bitext_bitext** out) { return bitext_bitext_load(a.bitext.c_str(), out); });
  std::uint64_t pairs = 0, src = 0, tgt = 0;
  check(bitext_bitext_stats(b.get(), &pairs, &src, &tgt));
  if (!a.manifest.empty()) run.write(a.manifest);
  std::cout << "bi-sentences          " << pairs << "\n"
            << "unique source tokens  " << src << "\n"
            << "unique target tokens  " << tgt << "\n";
  return 0;
}

// ---- bench ----

struct BenchArgs {
  std::vector<std::size_t> sizes{100, 200, 500};
  std::vector<unsigned> workers{1, 2, 4};
  std::vector<std::string> engines{"nw", "nw-wavefront", "astar"};
  int repeats = 3;
  std::string out, manifest;
  bool skip_figures = false;
};

double time_engine(const bitext_matrix* m, bitext_engine engine, unsigned workers,
                   int repeats) {
  bitext_mining_config config;
  bitext_mining_config_default(&config);
  config.workers = workers;
  double best = 0.0;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    AlignmentHandle a = make<AlignmentHandle>(
        [&](bitext_alignment** out) { return bitext_align(m, &config, engine, out); });
    const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
    if (r == 0 || dt.count() < best) best = dt.count();
  }
  return best;
}

std::string render(const bitext_alignment* a, const std::vector<const char*>& rows,
                   const std::vector<const char*>& cols) {
  std::size_t needed = 0;
  check(bitext_alignment_render(a, rows.data(), cols.data(), nullptr, 0, &needed));
  std::string text(needed, '\0');
  check(bitext_alignment_render(a, rows.data(), cols.data(), text.data(), text.size(), nullptr));
  text.resize(needed - 1);
  return text;
}

// The letter and word fixtures, aligned with and without the monotonicity
// constraint. Scoring: match +1, mismatch -0.5, gap 0.5.
void print_figures(std::ostream& os) {
  struct Fixture {
    const char* name;
    std::vector<const char*> rows, cols;
  };
  const Fixture fixtures[] = {
      {"letters", {"a", "d", "c", "d", "e"}, {"a", "d", "e", "g", "f"}},
      {"words",
       {"tablets", "make", "people", "spoil", "children"},
       {"tablets", "make", "children", "very", "addicted"}},
  };
  bitext_mining_config config;
  bitext_mining_config_default(&config);
  config.match_bonus = 1.0;
  config.mismatch_cost = -0.5;
  config.gap_penalty = 0.5;
  for (const Fixture& f : fixtures) {
    Matrix m = make<Matrix>([&](bitext_matrix** out) {
      return bitext_matrix_symbols(f.rows.data(), f.rows.size(), f.cols.data(),
                                   f.cols.size(), out);
    });
    for (bitext_engine e : {BITEXT_ENGINE_NW, BITEXT_ENGINE_ASTAR_UNCONSTRAINED}) {
      AlignmentHandle a = make<AlignmentHandle>(
          [&](bitext_alignment** out) { return bitext_align(m.get(), &config, e, out); });
      const std::string text = render(a.get(), f.rows, f.cols);
      const auto nl = text.find('\n');
      os << "# " << f.name << " " << bitext_engine_name(e) << " (score "
         << shortest(bitext_alignment_score(a.get())) << ")\n"
         << "#   " << text.substr(0, nl) << "\n"
         << "#   " << text.substr(nl + 1) << "\n";
    }
  }
}

int cmd_bench(const BenchArgs& a, const Globals& g) {
  std::vector<bitext_engine> engines;
  for (const auto& name : a.engines) {
    bitext_engine e;
    if (bitext_engine_parse(name.c_str(), &e) != BITEXT_OK) {
      throw UsageError("unknown engine " + name);
    }
    if (e == BITEXT_ENGINE_ASTAR_UNCONSTRAINED) {
      throw UsageError("the unconstrained engine is shown on the figure fixtures only");
    }
    engines.push_back(e);
  }
  for (std::size_t s : a.sizes)
    if (s < 1) throw UsageError("sizes must be >= 1");
  for (unsigned w : a.workers)
    if (w < 1) throw UsageError("worker counts must be >= 1");

  Run run("bench", g);
  run.param("repeats", std::to_string(a.repeats));

  std::ostringstream csv;
  csv << "size,engine,workers,ms,speedup_vs_1_worker\n";
  for (std::size_t size : a.sizes) {
    Matrix m = make<Matrix>([&](bitext_matrix** out) {
      return bitext_matrix_random(size, size, g.seed + size, out);
    });
    for (bitext_engine e : engines) {
      const double base = time_engine(m.get(), e, 1, a.repeats);
      for (unsigned w : a.workers) {
        const double ms = w == 1 ? base : time_engine(m.get(), e, w, a.repeats);
        csv << size << ',' << bitext_engine_name(e) << ',' << w << ',' << fixed(ms, 3) << ','
            << (w == 1 ? "1.00" : fixed(ms > 0 ? base / ms : 1.0, 2)) << '\n';
      }
    }
  }

  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(a.out, std::ios::binary | std::ios::trunc);
    f << csv.str();
    if (!f.flush()) throw RuntimeFailure("cannot write " + a.out);
  }
  if (!a.skip_figures) print_figures(std::cout);
  if (!a.manifest.empty()) {
    run.write(a.manifest);
  } else if (!a.out.empty()) {
    run.write(a.out + ".manifest.json");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel-sentence mining from comparable corpora"};
  app.set_version_flag("--version", std::string(bitext_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--workers", g.workers, "worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_flag("--verbose,-v", g.verbose, "extra progress output on stderr");

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "pair source and target articles into a corpus");
  c_ingest->add_option("--source", ingest.source, "source document file")->required();
  c_ingest->add_option("--target", ingest.target, "target document file")->required();
  c_ingest->add_option("--links", ingest.links, "title link table")->required();
  c_ingest->add_option("--out", ingest.out, "corpus directory")->required();
  c_ingest->add_option("--source-lang", ingest.source_lang)->capture_default_str();
  c_ingest->add_option("--target-lang", ingest.target_lang)->capture_default_str();

  DictArgs dict;
  auto* c_dict = app.add_subcommand("dict", "build a translation lexicon");
  c_dict->add_option("--parallel", dict.parallel, "source<TAB>target sentences")->required();
  c_dict->add_option("--titles", dict.titles, "title pairs to merge");
  c_dict->add_option("--iterations", dict.iterations, "EM iterations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  c_dict->add_option("--out", dict.out, "lexicon file")->required();

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "train the similarity classifier");
  c_train->add_option("--parallel", train.parallel, "positive sentence pairs")->required();
  c_train->add_option("--lexicon", train.lexicon)->required();
  c_train->add_option("--epochs", train.epochs)->capture_default_str()->check(CLI::PositiveNumber);
  c_train->add_option("--out", train.out, "model file")->required();

  TuneArgs tune;
  auto* c_tune = app.add_subcommand("tune", "tune threshold and gap penalty on references");
  c_tune->add_option("--corpus", tune.corpus)->required();
  c_tune->add_option("--model", tune.model)->required();
  c_tune->add_option("--lexicon", tune.lexicon)->required();
  c_tune->add_option("--reference", tune.reference, "topic<TAB>i<TAB>j rows")->required();
  c_tune->add_option("--budget", tune.budget)->capture_default_str()->check(CLI::PositiveNumber);
  c_tune->add_option("--out", tune.out, "JSON report");
  tune.mining.add_to(c_tune);

  MineArgs mine;
  auto* c_mine = app.add_subcommand("mine", "mine bi-sentences from a corpus");
  c_mine->add_option("--corpus", mine.corpus)->required();
  c_mine->add_option("--model", mine.model)->required();
  c_mine->add_option("--lexicon", mine.lexicon)->required();
  c_mine->add_option("--out", mine.out, "bitext file")->required();
  mine.mining.add_to(c_mine);

  StatsArgs stats;
  auto* c_stats = app.add_subcommand("stats", "count bi-sentences and unique tokens");
  c_stats->add_option("bitext", stats.bitext, "mined bitext file")->required();
  c_stats->add_option("--manifest", stats.manifest, "write a run manifest here");

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "time the engines on random matrices");
  c_bench->add_option("--sizes", bench.sizes)->delimiter(',')->capture_default_str();
  c_bench->add_option("--workers-list", bench.workers)->delimiter(',')->capture_default_str();
  c_bench->add_option("--engines", bench.engines)->delimiter(',')->capture_default_str();
  c_bench->add_option("--repeats", bench.repeats)->capture_default_str()->check(CLI::PositiveNumber);
  c_bench->add_option("--out", bench.out, "CSV file (default stdout)");
  c_bench->add_option("--manifest", bench.manifest, "write a run manifest here");
  c_bench->add_flag("--no-figures", bench.skip_figures, "skip the fixture alignments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*c_ingest) return cmd_ingest(ingest, g);
    if (*c_dict) return cmd_dict(dict, g);
    if (*c_train) return cmd_train(train, g);
    if (*c_tune) return cmd_tune(tune, g);
    if (*c_mine) return cmd_mine(mine, g);
    if (*c_stats) return cmd_stats(stats, g);
    if (*c_bench) return cmd_bench(bench, g);
  } catch (const UsageError& e) {
    std::cerr << "bitext: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "bitext: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
