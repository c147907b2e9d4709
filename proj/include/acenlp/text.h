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

#ifndef ACENLP_TEXT_H_
#define ACENLP_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace acenlp {

// Decodes the code point starting at text[pos] and advances pos past it.
// Invalid or truncated sequences decode as U+FFFD and consume one byte.
char32_t NextCodePoint(std::string_view text, std::size_t &pos);

void AppendUtf8(char32_t cp, std::string &out);

// Simple (one-to-one) Unicode lowercase mapping. No normalization, no
// special casing.
std::string FoldCase(std::string_view text);

// Letters, digits and apostrophes (ASCII and U+2019) form words.
bool IsWordChar(char32_t cp);

// Trims ASCII whitespace from both ends.
std::string_view Trim(std::string_view s);

// Splits `s` on `sep`, trimming each piece and dropping empty ones.
std::vector<std::string> SplitList(std::string_view s, char sep);

// Splits one CSV record (RFC 4180 quoting, no embedded newlines). Returns
// false on an unterminated quote.
bool SplitCsvRecord(std::string_view line, std::vector<std::string> &fields);

// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double value);

// Quotes a CSV field when it contains a comma, quote or newline.
std::string CsvField(std::string_view s);

}  // namespace acenlp

#endif  // ACENLP_TEXT_H_
