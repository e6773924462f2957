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

#include "bitext/corpus.hpp"

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "bitext/error.hpp"
#include "bitext/text.hpp"
#include "tsv.hpp"

namespace bitext {
namespace {

constexpr std::string_view kPairsFile = "pairs.tsv";
constexpr std::string_view kSentencesFile = "sentences.tsv";

Error parse_error(std::string_view origin, std::size_t line_no,
                  const std::string& what) {
  return Error(ErrorCode::kParse,
               tsv::line_ref(origin, line_no) + ": " + what);
}

// Reads non-blank lines, calling fn(line_no, fields).
template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = tsv::chomp(line);
    if (trim(view).empty()) continue;
    fn(line_no, tsv::split(view));
  }
}

}  // namespace

std::vector<Document> parse_documents(std::istream& in, std::string_view lang,
                                      std::string_view origin) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  for_each_record(in, [&](std::size_t line_no,
                          const std::vector<std::string_view>& f) {
    if (f.size() != 3) {
      throw parse_error(origin, line_no,
                        "expected id<TAB>title<TAB>text, got " +
                            std::to_string(f.size()) + " fields");
    }
    Document doc;
    doc.id = std::string(trim(f[0]));
    if (doc.id.empty()) throw parse_error(origin, line_no, "empty document id");
    if (!seen.insert(doc.id).second) {
      throw Error(ErrorCode::kData, tsv::line_ref(origin, line_no) +
                                        ": duplicate document id " + doc.id);
    }
    doc.lang = std::string(lang);
    doc.title = std::string(trim(tsv::unescape(f[1])));
    doc.sentences = segment_sentences(clean_markup(tsv::unescape(f[2])));
    if (doc.sentences.empty()) {
      throw Error(ErrorCode::kData, "document " + doc.id + " has no sentences");
    }
    docs.push_back(std::move(doc));
  });
  return docs;
}

std::vector<Document> ingest_documents(const std::filesystem::path& path,
                                       std::string_view lang) {
  auto in = tsv::open_input(path);
  return parse_documents(in, lang, path.string());
}

std::vector<TitleLink> parse_links(std::istream& in, std::string_view origin) {
  std::vector<TitleLink> links;
  for_each_record(in, [&](std::size_t line_no,
                          const std::vector<std::string_view>& f) {
    if (f.size() != 2) {
      throw parse_error(origin, line_no,
                        "expected source_title<TAB>target_title");
    }
    links.push_back({std::string(trim(f[0])), std::string(trim(f[1]))});
  });
  return links;
}

std::vector<TitleLink> read_links(const std::filesystem::path& path) {
  auto in = tsv::open_input(path);
  return parse_links(in, path.string());
}

PairingResult pair_articles(std::span<const Document> source_docs,
                            std::span<const Document> target_docs,
                            std::span<const TitleLink> links) {
  // First document with a given title is the one a link resolves to.
  std::unordered_map<std::string_view, std::size_t> source_by_title;
  std::unordered_map<std::string_view, std::size_t> target_by_title;
  for (std::size_t i = 0; i < source_docs.size(); ++i)
    source_by_title.try_emplace(trim(source_docs[i].title), i);
  for (std::size_t i = 0; i < target_docs.size(); ++i)
    target_by_title.try_emplace(trim(target_docs[i].title), i);

  PairingResult result;
  std::vector<bool> source_used(source_docs.size(), false);
  std::vector<bool> target_used(target_docs.size(), false);
  for (const TitleLink& link : links) {
    const auto s = source_by_title.find(trim(link.source_title));
    const auto t = target_by_title.find(trim(link.target_title));
    if (s == source_by_title.end() || t == target_by_title.end()) {
      ++result.skipped;
      continue;
    }
    if (source_used[s->second] || target_used[t->second]) {
      ++result.duplicates;
      continue;
    }
    const Document& src = source_docs[s->second];
    const Document& tgt = target_docs[t->second];
    if (src.lang == tgt.lang) {
      throw Error(ErrorCode::kData,
                  "pair " + src.title + " has the same language on both sides");
    }
    source_used[s->second] = true;
    target_used[t->second] = true;
    result.pairs.push_back({std::string(trim(src.title)), src, tgt});
  }
  return result;
}

CorpusStats corpus_stats(std::span<const BitextEntry> bitext) {
  std::unordered_set<std::string> source_vocab;
  std::unordered_set<std::string> target_vocab;
  for (const BitextEntry& e : bitext) {
    for (auto& tok : tokenize(e.source)) source_vocab.insert(std::move(tok));
    for (auto& tok : tokenize(e.target)) target_vocab.insert(std::move(tok));
  }
  return {bitext.size(), source_vocab.size(), target_vocab.size()};
}

std::vector<SentencePair> parse_parallel(std::istream& in,
                                         std::string_view origin) {
  std::vector<SentencePair> pairs;
  for_each_record(in, [&](std::size_t line_no,
                          const std::vector<std::string_view>& f) {
    if (f.size() != 2) {
      throw parse_error(origin, line_no, "expected source<TAB>target");
    }
    pairs.push_back({std::string(trim(f[0])), std::string(trim(f[1]))});
  });
  return pairs;
}

std::vector<SentencePair> read_parallel(const std::filesystem::path& path) {
  auto in = tsv::open_input(path);
  return parse_parallel(in, path.string());
}

std::string format_score(double score) { return tsv::format_fixed(score, 4); }

void write_bitext(std::ostream& out, std::span<const BitextEntry> bitext) {
  for (const BitextEntry& e : bitext) {
    out << format_score(e.score) << '\t' << e.source << '\t' << e.target
        << '\n';
  }
}

void write_bitext(const std::filesystem::path& path,
                  std::span<const BitextEntry> bitext) {
  auto out = tsv::open_output(path);
  write_bitext(out, bitext);
  tsv::finish_output(out, path);
}

std::vector<BitextEntry> parse_bitext(std::istream& in,
                                      std::string_view origin) {
  std::vector<BitextEntry> entries;
  for_each_record(in, [&](std::size_t line_no,
                          const std::vector<std::string_view>& f) {
    if (f.size() != 3) {
      throw parse_error(origin, line_no, "expected score<TAB>source<TAB>target");
    }
    const auto score = tsv::parse_double(trim(f[0]));
    if (!score) throw parse_error(origin, line_no, "bad score");
    entries.push_back({*score, std::string(f[1]), std::string(f[2])});
  });
  return entries;
}

std::vector<BitextEntry> read_bitext(const std::filesystem::path& path) {
  auto in = tsv::open_input(path);
  return parse_bitext(in, path.string());
}

void save_corpus(const std::filesystem::path& dir,
                 std::span<const DocumentPair> pairs) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());

  const auto pairs_path = dir / kPairsFile;
  const auto sentences_path = dir / kSentencesFile;
  auto pairs_out = tsv::open_output(pairs_path);
  auto sentences_out = tsv::open_output(sentences_path);
  for (const DocumentPair& p : pairs) {
    const std::string topic = tsv::escape(p.topic_id);
    pairs_out << topic << '\t' << p.source.lang << '\t'
              << tsv::escape(p.source.id) << '\t'
              << tsv::escape(p.source.title) << '\t' << p.target.lang << '\t'
              << tsv::escape(p.target.id) << '\t'
              << tsv::escape(p.target.title) << '\n';
    for (const auto& s : p.source.sentences)
      sentences_out << topic << "\tsource\t" << tsv::escape(s) << '\n';
    for (const auto& s : p.target.sentences)
      sentences_out << topic << "\ttarget\t" << tsv::escape(s) << '\n';
  }
  tsv::finish_output(pairs_out, pairs_path);
  tsv::finish_output(sentences_out, sentences_path);
}

std::vector<DocumentPair> load_corpus(const std::filesystem::path& dir) {
  const auto pairs_path = dir / kPairsFile;
  const auto sentences_path = dir / kSentencesFile;

  std::vector<DocumentPair> pairs;
  std::unordered_map<std::string, std::size_t> index;
  {
    auto in = tsv::open_input(pairs_path);
    const std::string origin = pairs_path.string();
    for_each_record(in, [&](std::size_t line_no,
                            const std::vector<std::string_view>& f) {
      if (f.size() != 7) throw parse_error(origin, line_no, "expected 7 fields");
      DocumentPair p;
      p.topic_id = tsv::unescape(f[0]);
      p.source = {tsv::unescape(f[2]), std::string(f[1]), tsv::unescape(f[3]), {}};
      p.target = {tsv::unescape(f[5]), std::string(f[4]), tsv::unescape(f[6]), {}};
      if (!index.try_emplace(p.topic_id, pairs.size()).second) {
        throw parse_error(origin, line_no, "duplicate topic " + p.topic_id);
      }
      pairs.push_back(std::move(p));
    });
  }
  {
    auto in = tsv::open_input(sentences_path);
    const std::string origin = sentences_path.string();
    for_each_record(in, [&](std::size_t line_no,
                            const std::vector<std::string_view>& f) {
      if (f.size() != 3) throw parse_error(origin, line_no, "expected 3 fields");
      const auto it = index.find(tsv::unescape(f[0]));
      if (it == index.end()) {
        throw parse_error(origin, line_no,
                          "unknown topic " + tsv::unescape(f[0]));
      }
      DocumentPair& p = pairs[it->second];
      if (f[1] == "source") {
        p.source.sentences.push_back(tsv::unescape(f[2]));
      } else if (f[1] == "target") {
        p.target.sentences.push_back(tsv::unescape(f[2]));
      } else {
        throw parse_error(origin, line_no, "side must be source or target");
      }
    });
  }
  for (const DocumentPair& p : pairs) {
    if (p.source.sentences.empty() || p.target.sentences.empty()) {
      throw Error(ErrorCode::kData, "topic " + p.topic_id + " has an empty side");
    }
  }
  return pairs;
}

}  // namespace bitext
