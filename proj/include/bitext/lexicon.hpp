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

#ifndef BITEXT_LEXICON_HPP_
#define BITEXT_LEXICON_HPP_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bitext/corpus.hpp"

namespace bitext {

inline constexpr double kLexiconPruneBelow = 1e-4;
inline constexpr double kTitleEntryProbability = 0.5;

// Bilingual token translation table P(target | source).
class Lexicon {
 public:
  using Row = std::unordered_map<std::string, double>;

  struct Entry {
    std::string source;
    std::string target;
    double probability;
  };

  // Probability must be in (0, 1]; anything else throws kInvalidArgument.
  void set(std::string_view source, std::string_view target,
           double probability);

  // 0 when there is no entry.
  double probability(std::string_view source, std::string_view target) const;

  // nullptr when the source token has no entries.
  const Row* row(std::string_view source) const;

  // Rescales one source row to sum to 1.
  void normalize_row(std::string_view source);

  std::size_t entry_count() const;
  std::size_t source_count() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  // Sorted by source, then descending probability, then target.
  std::vector<Entry> sorted_entries() const;

  // Swaps the roles of source and target. Probabilities are carried over
  // unchanged, so rows of the result are not normalized.
  Lexicon transposed() const;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, Row, Hash, std::equal_to<>> rows_;
};

struct LexiconOptions {
  int iterations = 5;
  // Entries below this are dropped after the last EM step and their rows
  // renormalized. Zero keeps the raw EM table.
  double prune_below = kLexiconPruneBelow;
};

// Word-translation EM (IBM Model 1 style) over tokenized sentence pairs.
// Throws kInvalidArgument for an empty corpus or iterations < 1.
Lexicon build_lexicon(std::span<const SentencePair> parallel,
                      const LexiconOptions& options);

struct TitleMergeReport {
  std::size_t merged = 0;
  std::size_t skipped = 0;
};

// Adds single-token title pairs with probability max(existing, 0.5) and
// renormalizes the touched rows; multi-token titles are skipped.
Lexicon merge_title_lexicon(Lexicon lexicon, std::span<const TitleLink> titles,
                            TitleMergeReport* report = nullptr);

// `source<TAB>target<TAB>probability` lines, probability with 6 decimals,
// ordered as sorted_entries().
void write_lexicon(std::ostream& out, const Lexicon& lexicon);
void save_lexicon(const std::filesystem::path& path, const Lexicon& lexicon);
Lexicon parse_lexicon(std::istream& in, std::string_view origin = "<stream>");
Lexicon load_lexicon(const std::filesystem::path& path);

}  // namespace bitext

#endif  // BITEXT_LEXICON_HPP_
