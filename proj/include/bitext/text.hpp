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

#ifndef BITEXT_TEXT_HPP_
#define BITEXT_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bitext {

// Removes markup from raw article text.
//
// Entities for &amp; &lt; &gt; &quot; &apos; are decoded, the content of
// table/ref/references/figure/gallery containers is dropped, remaining
// angle-bracket tags are stripped (an unclosed tag is stripped up to the end
// of its line) and whitespace runs collapse to single spaces. The steps are
// repeated until the text stops changing, so the function is idempotent.
std::string clean_markup(std::string_view raw);

// Splits cleaned text into sentences at . ! ? followed by whitespace and an
// uppercase letter or digit. Single uppercase initials ("A.") and common
// personal titles ("Mr.", "Dr.") do not end a sentence.
std::vector<std::string> segment_sentences(std::string_view text);

// The tokenizer shared by statistics, lexicon training and features:
// whitespace split, leading/trailing punctuation stripped, lowercased,
// empty tokens dropped.
std::vector<std::string> tokenize(std::string_view text);

// Number of UTF-8 code points; invalid bytes count as one each.
std::size_t codepoint_count(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace bitext

#endif  // BITEXT_TEXT_HPP_
