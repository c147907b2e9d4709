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

#include "acenlp/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "acenlp/errors.h"
#include "acenlp/text.h"
#include "json.hpp"

namespace acenlp {

using json = nlohmann::json;

Corpus Corpus::FromDocuments(std::vector<Document> docs) {
  Corpus corpus;
  std::stable_sort(docs.begin(), docs.end(),
                   [](const Document &a, const Document &b) { return a.id < b.id; });
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i > 0 && docs[i - 1].id == docs[i].id) {
      throw ValidationError("duplicate doc_id '" + docs[i].id + "'");
    }
    corpus.positions_.emplace(docs[i].id, i);
  }
  corpus.docs_ = std::move(docs);
  return corpus;
}

std::size_t Corpus::IndexOf(std::string_view id) const {
  auto it = positions_.find(std::string(id));
  return it == positions_.end() ? npos : it->second;
}

Corpus ParseCorpus(std::istream &in, const std::string &source) {
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  std::size_t consumed = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    ++consumed;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error &e) {
      throw ParseError(source, line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(source, line_no, "expected a JSON object");
    auto id = obj.find("id");
    auto text = obj.find("text");
    if (id == obj.end() || !id->is_string()) {
      throw ParseError(source, line_no, "missing string field 'id'");
    }
    if (text == obj.end() || !text->is_string()) {
      throw ParseError(source, line_no, "missing string field 'text'");
    }
    Document doc;
    doc.id = id->get<std::string>();
    doc.text = text->get<std::string>();
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (it.key() == "id" || it.key() == "text") continue;
      doc.meta[it.key()] =
          it->is_string() ? it->get<std::string>() : it->dump();
    }
    docs.push_back(std::move(doc));
  }
  Corpus corpus;
  try {
    corpus = Corpus::FromDocuments(std::move(docs));
  } catch (const ValidationError &e) {
    throw ValidationError(source + ": " + e.what());
  }
  corpus.source_lines_ = consumed;
  return corpus;
}

Corpus LoadCorpus(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file " + path);
  return ParseCorpus(in, path);
}

void WriteCorpus(std::ostream &out, const Corpus &corpus) {
  for (const Document &doc : corpus.docs()) {
    json obj = json::object();
    obj["id"] = doc.id;
    obj["text"] = doc.text;
    for (const auto &[key, value] : doc.meta) obj[key] = value;
    out << obj.dump() << '\n';
  }
}

}  // namespace acenlp
