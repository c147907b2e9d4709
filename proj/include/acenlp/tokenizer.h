// Copyright 2026 The acenlp Authors.
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

#ifndef ACENLP_TOKENIZER_H_
#define ACENLP_TOKENIZER_H_

#include <cstddef>
#include <string_view>
#include <vector>

namespace acenlp {

// A word token. `text` views into the tokenized string, so tokens must not
// outlive it. Offsets are byte offsets; `end` is exclusive.
struct Token {
  std::string_view text;
  std::size_t start = 0;
  std::size_t end = 0;
};

// Splits text into maximal runs of word characters (letters, digits,
// apostrophes). Everything else separates tokens.
std::vector<Token> Tokenize(std::string_view text);

// True if `c` ends a sentence for the purposes of term matching and
// negation windows.
inline bool IsSentenceBoundary(char32_t c) {
  return c == '.' || c == '!' || c == '?' || c == '\n' || c == '\r';
}

// A multi-token term may only continue across a gap made of exactly one
// non-word code point that is not a sentence boundary ("self harm",
// "self-harm", but not "self  harm" or "self. harm").
bool IsJoiningGap(std::string_view gap);

}  // namespace acenlp

#endif  // ACENLP_TOKENIZER_H_
