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

#include "acenlp/tokenizer.h"

#include "acenlp/text.h"

namespace acenlp {

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  std::size_t begin = std::string_view::npos;
  while (pos < text.size()) {
    std::size_t here = pos;
    bool word = IsWordChar(NextCodePoint(text, pos));
    if (word && begin == std::string_view::npos) {
      begin = here;
    } else if (!word && begin != std::string_view::npos) {
      tokens.push_back({text.substr(begin, here - begin), begin, here});
      begin = std::string_view::npos;
    }
  }
  if (begin != std::string_view::npos) {
    tokens.push_back({text.substr(begin), begin, text.size()});
  }
  return tokens;
}

bool IsJoiningGap(std::string_view gap) {
  if (gap.empty()) return false;
  std::size_t pos = 0;
  char32_t cp = NextCodePoint(gap, pos);
  return pos == gap.size() && !IsSentenceBoundary(cp) && !IsWordChar(cp);
}

}  // namespace acenlp
