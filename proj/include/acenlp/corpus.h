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

#ifndef ACENLP_CORPUS_H_
#define ACENLP_CORPUS_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace acenlp {

struct Document {
  std::string id;
  std::string text;
  // Every JSONL field other than `id` and `text`. Non-string values are kept
  // as their compact JSON serialization.
  std::map<std::string, std::string> meta;

  bool operator==(const Document &) const = default;
};

// Documents in canonical order (sorted by id); row i of every document
// matrix refers to docs()[i].
class Corpus {
 public:
  Corpus() = default;

  // Sorts by id. Throws ValidationError on a duplicate id.
  static Corpus FromDocuments(std::vector<Document> docs);

  const std::vector<Document> &docs() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }
  const Document &operator[](std::size_t i) const { return docs_[i]; }

  // Position of the document, or npos.
  std::size_t IndexOf(std::string_view id) const;

  // Number of non-blank lines consumed when loaded from JSONL.
  std::size_t source_lines() const { return source_lines_; }

  bool operator==(const Corpus &other) const { return docs_ == other.docs_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  friend Corpus ParseCorpus(std::istream &, const std::string &);

  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> positions_;
  std::size_t source_lines_ = 0;
};

// JSONL, one object per line with string fields `id` and `text`. Blank
// lines are skipped. Throws ParseError with the line number on malformed
// JSON or missing fields, ValidationError on duplicate ids.
Corpus ParseCorpus(std::istream &in, const std::string &source = "<corpus>");
Corpus LoadCorpus(const std::string &path);

// Writes the corpus back as JSONL in canonical order. Meta values are
// written as strings.
void WriteCorpus(std::ostream &out, const Corpus &corpus);

}  // namespace acenlp

#endif  // ACENLP_CORPUS_H_
