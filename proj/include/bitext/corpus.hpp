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

#ifndef BITEXT_CORPUS_HPP_
#define BITEXT_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bitext {

// One article in one language.
struct Document {
  std::string id;
  std::string lang;
  std::string title;
  std::vector<std::string> sentences;
};

// Topic-aligned comparable documents; topic_id is the source title.
struct DocumentPair {
  std::string topic_id;
  Document source;
  Document target;
};

struct TitleLink {
  std::string source_title;
  std::string target_title;
};

struct SentencePair {
  std::string source;
  std::string target;
};

// One mined bi-sentence.
struct BitextEntry {
  double score = 0.0;
  std::string source;
  std::string target;
};

struct CorpusStats {
  std::uint64_t pair_count = 0;
  std::uint64_t source_unique_tokens = 0;
  std::uint64_t target_unique_tokens = 0;
};

struct PairingResult {
  std::vector<DocumentPair> pairs;
  std::size_t skipped = 0;     // a title did not resolve
  std::size_t duplicates = 0;  // a document was already paired
};

// Document file: one `id<TAB>title<TAB>raw_text` record per line, with \t,
// \n and \\ escaped inside raw_text. Blank lines are ignored. Throws
// ErrorCode::kParse naming the line for malformed records, and kData for
// duplicate ids or documents that clean down to nothing.
std::vector<Document> parse_documents(std::istream& in, std::string_view lang,
                                      std::string_view origin = "<stream>");
std::vector<Document> ingest_documents(const std::filesystem::path& path,
                                       std::string_view lang);

// Link table / title file: `source_title<TAB>target_title` per line.
std::vector<TitleLink> parse_links(std::istream& in,
                                   std::string_view origin = "<stream>");
std::vector<TitleLink> read_links(const std::filesystem::path& path);

// Pairs documents through title links. Titles compare exactly after
// trimming; the first link to claim a document wins.
PairingResult pair_articles(std::span<const Document> source_docs,
                            std::span<const Document> target_docs,
                            std::span<const TitleLink> links);

CorpusStats corpus_stats(std::span<const BitextEntry> bitext);

// Parallel sentence file: `source<TAB>target` per line.
std::vector<SentencePair> parse_parallel(std::istream& in,
                                         std::string_view origin = "<stream>");
std::vector<SentencePair> read_parallel(const std::filesystem::path& path);

// Mined bitext file: `score<TAB>source<TAB>target`, score with 4 decimals.
std::string format_score(double score);
void write_bitext(std::ostream& out, std::span<const BitextEntry> bitext);
void write_bitext(const std::filesystem::path& path,
                  std::span<const BitextEntry> bitext);
std::vector<BitextEntry> parse_bitext(std::istream& in,
                                      std::string_view origin = "<stream>");
std::vector<BitextEntry> read_bitext(const std::filesystem::path& path);

// Corpus directory: pairs.tsv (one line per pair) and sentences.tsv
// (`topic_id<TAB>source|target<TAB>sentence`, in document order).
void save_corpus(const std::filesystem::path& dir,
                 std::span<const DocumentPair> pairs);
std::vector<DocumentPair> load_corpus(const std::filesystem::path& dir);

}  // namespace bitext

#endif  // BITEXT_CORPUS_HPP_
