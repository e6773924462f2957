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

#include "bitext/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>

#include "bitext/error.hpp"
#include "bitext/text.hpp"
#include "tsv.hpp"

namespace bitext {
namespace {

// Maps tokens to dense ids in lexicographic order, so every loop over ids
// visits tokens in a fixed order.
struct Vocabulary {
  std::vector<std::string> words;
  std::unordered_map<std::string, std::uint32_t> ids;

  void finalize() {
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    ids.reserve(words.size());
    for (std::uint32_t i = 0; i < words.size(); ++i) ids.emplace(words[i], i);
  }
  std::uint32_t id(const std::string& w) const { return ids.at(w); }
};

double sum_row(const Lexicon::Row& row) {
  // Sum in key order so the result does not depend on hash layout.
  std::vector<std::pair<std::string_view, double>> items(row.begin(), row.end());
  std::sort(items.begin(), items.end());
  double total = 0.0;
  for (const auto& [_, p] : items) total += p;
  return total;
}

}  // namespace

void Lexicon::set(std::string_view source, std::string_view target,
                  double probability) {
  if (!(probability > 0.0 && probability <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "lexicon probability out of (0,1]: " +
                    tsv::format_fixed(probability, 6));
  }
  auto it = rows_.find(source);
  if (it == rows_.end()) it = rows_.emplace(std::string(source), Row{}).first;
  it->second.insert_or_assign(std::string(target), probability);
}

double Lexicon::probability(std::string_view source,
                            std::string_view target) const {
  const Row* r = row(source);
  if (r == nullptr) return 0.0;
  const auto it = r->find(std::string(target));
  return it == r->end() ? 0.0 : it->second;
}

const Lexicon::Row* Lexicon::row(std::string_view source) const {
  const auto it = rows_.find(source);
  return it == rows_.end() ? nullptr : &it->second;
}

void Lexicon::normalize_row(std::string_view source) {
  const auto it = rows_.find(source);
  if (it == rows_.end()) return;
  const double total = sum_row(it->second);
  if (total <= 0.0) return;
  for (auto& [_, p] : it->second) p /= total;
}

std::size_t Lexicon::entry_count() const {
  std::size_t n = 0;
  for (const auto& [_, r] : rows_) n += r.size();
  return n;
}

std::vector<Lexicon::Entry> Lexicon::sorted_entries() const {
  std::vector<Entry> entries;
  entries.reserve(entry_count());
  for (const auto& [s, r] : rows_)
    for (const auto& [t, p] : r) entries.push_back({s, t, p});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.source != b.source) return a.source < b.source;
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.target < b.target;
  });
  return entries;
}

Lexicon Lexicon::transposed() const {
  Lexicon out;
  for (const auto& [s, r] : rows_)
    for (const auto& [t, p] : r) out.set(t, s, p);
  return out;
}

Lexicon build_lexicon(std::span<const SentencePair> parallel,
                      const LexiconOptions& options) {
  if (options.iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 1");
  }
  if (!(options.prune_below >= 0.0 && options.prune_below < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "prune threshold must be in [0,1)");
  }

  std::vector<std::vector<std::string>> src_tokens, tgt_tokens;
  Vocabulary sv, tv;
  for (const SentencePair& p : parallel) {
    auto s = tokenize(p.source);
    auto t = tokenize(p.target);
    if (s.empty() || t.empty()) continue;
    sv.words.insert(sv.words.end(), s.begin(), s.end());
    tv.words.insert(tv.words.end(), t.begin(), t.end());
    src_tokens.push_back(std::move(s));
    tgt_tokens.push_back(std::move(t));
  }
  if (src_tokens.empty()) throw Error(ErrorCode::kInvalidArgument, "no training pairs");
  sv.finalize();
  tv.finalize();

  // Sparse table over co-occurring (s,t): row_start[s] indexes a block of
  // target ids sorted ascending.
  std::vector<std::vector<std::uint32_t>> cooc(sv.words.size());
  std::vector<std::vector<std::uint32_t>> sid(src_tokens.size()), tid(src_tokens.size());
  for (std::size_t k = 0; k < src_tokens.size(); ++k) {
    for (const auto& w : src_tokens[k]) sid[k].push_back(sv.id(w));
    for (const auto& w : tgt_tokens[k]) tid[k].push_back(tv.id(w));
    for (std::uint32_t s : sid[k])
      cooc[s].insert(cooc[s].end(), tid[k].begin(), tid[k].end());
  }
  std::vector<std::size_t> row_start(sv.words.size() + 1, 0);
  std::vector<std::uint32_t> col;
  for (std::size_t s = 0; s < cooc.size(); ++s) {
    auto& c = cooc[s];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    row_start[s] = col.size();
    col.insert(col.end(), c.begin(), c.end());
    std::vector<std::uint32_t>().swap(c);
  }
  row_start.back() = col.size();
  auto cell = [&](std::uint32_t s, std::uint32_t t) {
    const auto begin = col.begin() + static_cast<std::ptrdiff_t>(row_start[s]);
    const auto end = col.begin() + static_cast<std::ptrdiff_t>(row_start[s + 1]);
    return static_cast<std::size_t>(std::lower_bound(begin, end, t) - col.begin());
  };

  // Per pair, the flat cell index of every (target position, source position).
  std::vector<std::vector<std::size_t>> links(src_tokens.size());
  for (std::size_t k = 0; k < src_tokens.size(); ++k) {
    links[k].reserve(tid[k].size() * sid[k].size());
    for (std::uint32_t t : tid[k])
      for (std::uint32_t s : sid[k]) links[k].push_back(cell(s, t));
  }

  std::vector<double> prob(col.size(), 1.0 / static_cast<double>(tv.words.size()));
  std::vector<double> count(col.size());
  for (int it = 0; it < options.iterations; ++it) {
    std::fill(count.begin(), count.end(), 0.0);
    for (std::size_t k = 0; k < links.size(); ++k) {
      const std::size_t ns = sid[k].size();
      for (std::size_t j = 0; j < tid[k].size(); ++j) {
        const std::size_t* idx = links[k].data() + j * ns;
        double z = 0.0;
        for (std::size_t i = 0; i < ns; ++i) z += prob[idx[i]];
        for (std::size_t i = 0; i < ns; ++i) count[idx[i]] += prob[idx[i]] / z;
      }
    }
    for (std::size_t s = 0; s + 1 < row_start.size(); ++s) {
      double total = 0.0;
      for (std::size_t c = row_start[s]; c < row_start[s + 1]; ++c) total += count[c];
      for (std::size_t c = row_start[s]; c < row_start[s + 1]; ++c)
        prob[c] = count[c] / total;
    }
  }

  Lexicon lexicon;
  for (std::uint32_t s = 0; s + 1 < row_start.size(); ++s) {
    double kept = 0.0;
    for (std::size_t c = row_start[s]; c < row_start[s + 1]; ++c)
      if (prob[c] >= options.prune_below && prob[c] > 0.0) kept += prob[c];
    for (std::size_t c = row_start[s]; c < row_start[s + 1]; ++c) {
      if (prob[c] >= options.prune_below && prob[c] > 0.0) {
        const double p = options.prune_below > 0.0 ? prob[c] / kept : prob[c];
        lexicon.set(sv.words[s], tv.words[col[c]], std::min(p, 1.0));
      }
    }
  }
  return lexicon;
}

Lexicon merge_title_lexicon(Lexicon lexicon, std::span<const TitleLink> titles,
                            TitleMergeReport* report) {
  TitleMergeReport local;
  for (const TitleLink& link : titles) {
    const auto s = tokenize(link.source_title);
    const auto t = tokenize(link.target_title);
    if (s.size() != 1 || t.size() != 1) {
      ++local.skipped;
      continue;
    }
    const double p = std::max(lexicon.probability(s[0], t[0]), kTitleEntryProbability);
    lexicon.set(s[0], t[0], p);
    lexicon.normalize_row(s[0]);
    ++local.merged;
  }
  if (report != nullptr) *report = local;
  return lexicon;
}

void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  for (const auto& e : lexicon.sorted_entries()) {
    out << e.source << '\t' << e.target << '\t'
        << tsv::format_fixed(e.probability, 6) << '\n';
  }
}

void save_lexicon(const std::filesystem::path& path, const Lexicon& lexicon) {
  auto out = tsv::open_output(path);
  write_lexicon(out, lexicon);
  tsv::finish_output(out, path);
}

Lexicon parse_lexicon(std::istream& in, std::string_view origin) {
  Lexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = tsv::chomp(line);
    if (trim(view).empty()) continue;
    const auto f = tsv::split(view);
    const auto p = f.size() == 3 ? tsv::parse_double(trim(f[2])) : std::nullopt;
    if (!p || f[0].empty() || f[1].empty()) {
      throw Error(ErrorCode::kParse, tsv::line_ref(origin, line_no) +
                                         ": expected source<TAB>target<TAB>probability");
    }
    // Six-decimal rounding can turn a tiny entry into zero; such an entry
    // carries no information, so it is skipped.
    if (*p <= 0.0) continue;
    if (*p > 1.0) {
      throw Error(ErrorCode::kParse,
                  tsv::line_ref(origin, line_no) + ": probability above 1");
    }
    lexicon.set(f[0], f[1], *p);
  }
  return lexicon;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  auto in = tsv::open_input(path);
  return parse_lexicon(in, path.string());
}

}  // namespace bitext
