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

#include "bitext/text.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace bitext {
namespace {

struct Codepoint {
  char32_t value;
  std::size_t length;
};

Codepoint decode_utf8(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](std::size_t k) -> int {
    if (pos + k >= s.size()) return -1;
    const auto b = static_cast<unsigned char>(s[pos + k]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) return {b0, 1};
  if ((b0 & 0xE0) == 0xC0) {
    const int c1 = cont(1);
    if (c1 >= 0) return {static_cast<char32_t>(((b0 & 0x1F) << 6) | c1), 2};
  } else if ((b0 & 0xF0) == 0xE0) {
    const int c1 = cont(1), c2 = cont(2);
    if (c1 >= 0 && c2 >= 0)
      return {static_cast<char32_t>(((b0 & 0x0F) << 12) | (c1 << 6) | c2), 3};
  } else if ((b0 & 0xF8) == 0xF0) {
    const int c1 = cont(1), c2 = cont(2), c3 = cont(3);
    if (c1 >= 0 && c2 >= 0 && c3 >= 0)
      return {static_cast<char32_t>(((b0 & 0x07) << 18) | (c1 << 12) |
                                    (c2 << 6) | c3),
              4};
  }
  return {0xFFFD, 1};
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Simple case folding for Latin, Greek and Cyrillic capitals.
char32_t to_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c < 0xC0) return c;
  if (c <= 0xDE) return c == 0xD7 ? c : c + 32;
  if (c == 0x130) return U'i';
  if (c >= 0x100 && c <= 0x137) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x139 && c <= 0x148) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x14A && c <= 0x177) return (c % 2 == 0) ? c + 1 : c;
  if (c == 0x178) return 0xFF;
  if (c >= 0x179 && c <= 0x17E) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  return c;
}

bool is_upper(char32_t c) { return to_lower(c) != c; }

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_punctuation(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  return c == 0xA1 || c == 0xA7 || c == 0xAB || c == 0xB6 || c == 0xB7 ||
         c == 0xBB || c == 0xBF || (c >= 0x2010 && c <= 0x2027) ||
         (c >= 0x2030 && c <= 0x205E) || (c >= 0x3001 && c <= 0x3003) ||
         (c >= 0x3008 && c <= 0x3011);
}

std::string lowercase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) {
    const auto cp = decode_utf8(s, pos);
    if (cp.value == 0xFFFD && cp.length == 1) {
      out.push_back(s[pos]);
    } else {
      encode_utf8(to_lower(cp.value), out);
    }
    pos += cp.length;
  }
  return out;
}

// Strips punctuation code points from both ends.
std::string_view strip_punctuation(std::string_view token) {
  std::size_t begin = 0;
  while (begin < token.size()) {
    const auto cp = decode_utf8(token, begin);
    if (!is_punctuation(cp.value)) break;
    begin += cp.length;
  }
  std::size_t end = token.size();
  while (end > begin) {
    // Walk back to the start of the last code point.
    std::size_t start = end - 1;
    while (start > begin &&
           (static_cast<unsigned char>(token[start]) & 0xC0) == 0x80) {
      --start;
    }
    const auto cp = decode_utf8(token, start);
    if (start + cp.length != end || !is_punctuation(cp.value)) break;
    end = start;
  }
  return token.substr(begin, end - begin);
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return (x | 0x20) == (y | 0x20) || x == y;
         });
}

std::string decode_entities(std::string_view s) {
  static constexpr std::array<std::pair<std::string_view, char>, 5> kEntities{{
      {"&amp;", '&'},
      {"&lt;", '<'},
      {"&gt;", '>'},
      {"&quot;", '"'},
      {"&apos;", '\''},
  }};
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    bool replaced = false;
    if (s[i] == '&') {
      for (const auto& [name, ch] : kEntities) {
        if (s.substr(i, name.size()) == name) {
          out.push_back(ch);
          i += name.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(s[i++]);
  }
  return out;
}

constexpr std::array<std::string_view, 5> kContainerTags{
    "table", "ref", "references", "figure", "gallery"};

constexpr std::array<std::string_view, 18> kBlockTags{
    "p",  "br", "div", "li", "ul", "ol", "tr", "td", "th",
    "h1", "h2", "h3",  "h4", "h5", "h6", "dl", "dd", "blockquote"};

struct TagInfo {
  bool valid = false;
  bool closing = false;
  bool self_closing = false;
  std::string_view name;
  std::size_t end = 0;  // one past '>'
};

// Parses a tag starting at s[pos] == '<'. Only tags closed on the same line
// are recognized.
TagInfo parse_tag(std::string_view s, std::size_t pos) {
  TagInfo tag;
  std::size_t i = pos + 1;
  if (i < s.size() && s[i] == '/') {
    tag.closing = true;
    ++i;
  }
  const std::size_t name_begin = i;
  while (i < s.size() && (is_ascii_alpha(s[i]) ||
                          (i > name_begin && s[i] >= '0' && s[i] <= '9'))) {
    ++i;
  }
  if (i == name_begin) return tag;
  tag.name = s.substr(name_begin, i - name_begin);
  const std::size_t close = s.find_first_of(">\n", i);
  if (close == std::string_view::npos || s[close] != '>') return tag;
  tag.valid = true;
  tag.self_closing = close > pos && s[close - 1] == '/';
  tag.end = close + 1;
  return tag;
}

bool is_container(std::string_view name) {
  return std::any_of(kContainerTags.begin(), kContainerTags.end(),
                     [&](std::string_view c) { return iequals(c, name); });
}

bool is_block(std::string_view name) {
  return std::any_of(kBlockTags.begin(), kBlockTags.end(),
                     [&](std::string_view c) { return iequals(c, name); });
}

// Drops <container ...> ... </container> spans, honoring nesting of the same
// tag name. A container without a matching close is left for strip_tags.
std::string drop_containers(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '<') {
      out.push_back(s[i++]);
      continue;
    }
    const TagInfo open = parse_tag(s, i);
    if (!open.valid || open.closing || open.self_closing ||
        !is_container(open.name)) {
      out.push_back(s[i++]);
      continue;
    }
    int depth = 1;
    std::size_t j = open.end;
    std::size_t span_end = std::string_view::npos;
    while (j < s.size()) {
      if (s[j] == '<') {
        const TagInfo t = parse_tag(s, j);
        if (t.valid && iequals(t.name, open.name) && !t.self_closing) {
          depth += t.closing ? -1 : 1;
          if (depth == 0) {
            span_end = t.end;
            break;
          }
        }
        j = t.valid ? t.end : j + 1;
      } else {
        ++j;
      }
    }
    if (span_end == std::string_view::npos) {
      out.push_back(s[i++]);
      continue;
    }
    out.push_back(' ');
    i = span_end;
  }
  return out;
}

// Removes anything that starts like a tag: '<' followed by a letter, '/',
// '!' or '?'. Without a '>' on the same line the rest of the line goes.
std::string strip_tags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const bool starts_tag =
        s[i] == '<' && i + 1 < s.size() &&
        (is_ascii_alpha(s[i + 1]) || s[i + 1] == '/' || s[i + 1] == '!' ||
         s[i + 1] == '?');
    if (!starts_tag) {
      out.push_back(s[i++]);
      continue;
    }
    if (s.substr(i, 4) == "<!--") {
      const std::size_t end = s.find("-->", i + 4);
      if (end != std::string_view::npos) {
        out.push_back(' ');
        i = end + 3;
        continue;
      }
    }
    const TagInfo tag = parse_tag(s, i);
    if (tag.valid) {
      if (is_block(tag.name)) out.push_back(' ');
      i = tag.end;
      continue;
    }
    const std::size_t eol = s.find_first_of(">\n", i);
    if (eol == std::string_view::npos) {
      i = s.size();
    } else {
      i = s[eol] == '>' ? eol + 1 : eol;
    }
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_ascii_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

constexpr std::array<std::string_view, 15> kTitles{
    "Mr", "Mrs", "Ms",  "Dr",  "Prof", "St",  "Jr",  "Sr",
    "Mt", "Gen", "Col", "Lt",  "Sgt",  "Capt", "Rev"};

bool is_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

// True when the period at s[pos] belongs to an initial or a title.
bool is_abbreviation(std::string_view s, std::size_t pos) {
  std::size_t begin = pos;
  while (begin > 0 && !is_ascii_space(s[begin - 1])) --begin;
  std::string_view word = s.substr(begin, pos - begin);
  while (!word.empty() && (word.front() == '(' || word.front() == '"' ||
                           word.front() == '\'' || word.front() == '[')) {
    word.remove_prefix(1);
  }
  if (word.empty()) return false;
  const auto cp = decode_utf8(word, 0);
  if (cp.length == word.size() && is_upper(cp.value)) return true;
  return std::find(kTitles.begin(), kTitles.end(), word) != kTitles.end();
}

}  // namespace

std::string_view trim(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && is_ascii_space(text[b])) ++b;
  while (e > b && is_ascii_space(text[e - 1])) --e;
  return text.substr(b, e - b);
}

std::size_t codepoint_count(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t pos = 0; pos < text.size(); ++count) {
    pos += decode_utf8(text, pos).length;
  }
  return count;
}

std::string clean_markup(std::string_view raw) {
  std::string current(raw);
  for (;;) {
    std::string next =
        collapse_whitespace(strip_tags(drop_containers(decode_entities(current))));
    if (next == current) return next;
    current = std::move(next);
  }
}

std::vector<std::string> segment_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  auto emit = [&](std::string_view piece) {
    piece = trim(piece);
    if (!piece.empty()) sentences.emplace_back(piece);
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    // Terminator run and closing quotes/brackets stay with the sentence.
    std::size_t end = i + 1;
    while (end < text.size() &&
           (text[end] == '.' || text[end] == '!' || text[end] == '?')) {
      ++end;
    }
    while (end < text.size() && is_closer(text[end])) ++end;
    if (end >= text.size() || !is_ascii_space(text[end])) {
      i = end - 1;
      continue;
    }
    std::size_t next = end;
    while (next < text.size() && is_ascii_space(text[next])) ++next;
    if (next >= text.size()) break;
    const auto cp = decode_utf8(text, next);
    const bool opens = is_upper(cp.value) || (cp.value >= U'0' && cp.value <= U'9');
    const bool guarded = c == '.' && end == i + 1 && is_abbreviation(text, i);
    if (opens && !guarded) {
      emit(text.substr(start, end - start));
      start = next;
    }
    i = end - 1;
  }
  if (start < text.size()) emit(text.substr(start));
  return sentences;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_ascii_space(text[j])) {
      // U+00A0 also separates tokens.
      if (text[j] == '\xC2' && j + 1 < text.size() && text[j + 1] == '\xA0') break;
      ++j;
    }
    if (j > i) {
      const std::string_view token = strip_punctuation(text.substr(i, j - i));
      if (!token.empty()) tokens.push_back(lowercase(token));
    }
    i = j;
    if (i + 1 < text.size() && text[i] == '\xC2' && text[i + 1] == '\xA0') i += 2;
  }
  return tokens;
}

}  // namespace bitext
