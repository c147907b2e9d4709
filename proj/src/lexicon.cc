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

#include "acenlp/lexicon.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>

#include "acenlp/errors.h"
#include "acenlp/text.h"
#include "acenlp/tokenizer.h"

namespace acenlp {

namespace {

const char kLexiconHeader[] = "concept_id,term,is_preferred,parent_ids,group";

bool ParseFlag(std::string_view value, bool &flag) {
  std::string v = FoldCase(Trim(value));
  if (v == "1" || v == "true" || v == "yes" || v == "y") {
    flag = true;
  } else if (v.empty() || v == "0" || v == "false" || v == "no" || v == "n") {
    flag = false;
  } else {
    return false;
  }
  return true;
}

// Accumulates the rows of one concept.
struct ConceptRows {
  Concept def;
  std::vector<std::string> terms;  // in file order, preferred excluded
  std::set<std::string> folded;    // every term seen, folded
  bool has_group = false;
};

// Returns the id of some concept on a cycle, or an empty string.
std::string FindCycleMember(const std::vector<Concept> &concepts,
                            const std::unordered_map<std::string, std::size_t>
                                &positions) {
  enum : char { kWhite, kGray, kBlack };
  std::vector<char> color(concepts.size(), kWhite);
  for (std::size_t start = 0; start < concepts.size(); ++start) {
    if (color[start] != kWhite) continue;
    // Iterative DFS over parent edges: (node, next parent to visit).
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    color[start] = kGray;
    while (!stack.empty()) {
      auto &[node, next] = stack.back();
      const auto &parents = concepts[node].parents;
      if (next == parents.size()) {
        color[node] = kBlack;
        stack.pop_back();
        continue;
      }
      std::size_t parent = positions.at(parents[next++]);
      if (color[parent] == kGray) return concepts[parent].id;
      if (color[parent] == kWhite) {
        color[parent] = kGray;
        stack.emplace_back(parent, 0);
      }
    }
  }
  return {};
}

}  // namespace

Lexicon Lexicon::FromConcepts(std::vector<Concept> concepts) {
  Lexicon lex;
  std::sort(concepts.begin(), concepts.end(),
            [](const Concept &a, const Concept &b) { return a.id < b.id; });
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    Concept &c = concepts[i];
    if (c.id.empty()) throw ValidationError("concept with empty id");
    if (i > 0 && concepts[i - 1].id == c.id) {
      throw ValidationError("duplicate concept id " + c.id);
    }
    if (Trim(c.preferred_name).empty()) {
      throw ValidationError("concept " + c.id + " has no preferred name");
    }
    std::set<std::string> seen{FoldCase(c.preferred_name)};
    std::vector<std::string> synonyms;
    for (auto &s : c.synonyms) {
      if (Trim(s).empty()) continue;
      if (seen.insert(FoldCase(s)).second) synonyms.push_back(std::move(s));
    }
    c.synonyms = std::move(synonyms);
    std::sort(c.parents.begin(), c.parents.end());
    c.parents.erase(std::unique(c.parents.begin(), c.parents.end()),
                    c.parents.end());
    lex.positions_.emplace(c.id, i);
  }
  for (const Concept &c : concepts) {
    for (const ConceptId &p : c.parents) {
      if (p == c.id) {
        throw ValidationError("hierarchy cycle: " + c.id + " is its own parent");
      }
      if (!lex.positions_.count(p)) {
        throw ValidationError("concept " + c.id + " names unknown parent " + p);
      }
    }
  }
  if (std::string member = FindCycleMember(concepts, lex.positions_);
      !member.empty()) {
    throw ValidationError("hierarchy cycle through concept " + member);
  }

  lex.children_.assign(concepts.size(), {});
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    for (const ConceptId &p : concepts[i].parents) {
      lex.children_[lex.positions_.at(p)].push_back(i);
    }
    lex.term_index_[FoldCase(Trim(concepts[i].preferred_name))].insert(
        concepts[i].id);
    for (const auto &s : concepts[i].synonyms) {
      lex.term_index_[FoldCase(Trim(s))].insert(concepts[i].id);
    }
  }
  lex.concepts_ = std::move(concepts);
  return lex;
}

std::size_t Lexicon::IndexOf(std::string_view id) const {
  auto it = positions_.find(std::string(id));
  return it == positions_.end() ? npos : it->second;
}

const Concept &Lexicon::at(std::string_view id) const {
  std::size_t i = IndexOf(id);
  if (i == npos) throw ValidationError("unknown concept " + std::string(id));
  return concepts_[i];
}

Lexicon ParseLexicon(std::istream &in, const std::string &source) {
  std::map<ConceptId, ConceptRows> rows;
  std::vector<std::string> fields;
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    if (!seen_header) {
      std::string header(trimmed);
      header.erase(std::remove(header.begin(), header.end(), ' '),
                   header.end());
      if (header != kLexiconHeader) {
        throw ParseError(source, line_no,
                         std::string("expected header ") + kLexiconHeader);
      }
      seen_header = true;
      continue;
    }
    if (!SplitCsvRecord(line, fields)) {
      throw ParseError(source, line_no, "unterminated quoted field");
    }
    if (fields.size() != 5) {
      throw ParseError(source, line_no,
                       "expected 5 fields, got " + std::to_string(fields.size()));
    }
    std::string id(Trim(fields[0]));
    std::string term(Trim(fields[1]));
    if (id.empty()) throw ParseError(source, line_no, "empty concept_id");
    if (term.empty()) throw ParseError(source, line_no, "empty term");
    bool preferred;
    if (!ParseFlag(fields[2], preferred)) {
      throw ParseError(source, line_no,
                       "bad is_preferred value '" + fields[2] + "'");
    }
    std::string group(Trim(fields[4]));

    ConceptRows &entry = rows[id];
    entry.def.id = id;
    if (!group.empty()) {
      if (entry.has_group && entry.def.group != group) {
        throw ValidationError(source + ":" + std::to_string(line_no) +
                              ": concept " + id + " has conflicting groups '" +
                              entry.def.group + "' and '" + group + "'");
      }
      entry.def.group = group;
      entry.has_group = true;
    }
    for (auto &p : SplitList(fields[3], ';')) {
      entry.def.parents.push_back(std::move(p));
    }
    std::string folded = FoldCase(term);
    if (preferred) {
      if (!entry.def.preferred_name.empty() &&
          FoldCase(entry.def.preferred_name) != folded) {
        throw ValidationError(source + ":" + std::to_string(line_no) +
                              ": duplicate concept id " + id +
                              " with a second preferred name '" + term + "'");
      }
      entry.def.preferred_name = term;
    } else if (!entry.folded.count(folded)) {
      entry.terms.push_back(term);
    }
    entry.folded.insert(folded);
  }
  if (in.bad()) throw ParseError(source, line_no, "read error");

  std::vector<Concept> concepts;
  concepts.reserve(rows.size());
  for (auto &[id, entry] : rows) {
    Concept c = std::move(entry.def);
    std::vector<std::string> terms = std::move(entry.terms);
    if (c.preferred_name.empty()) {
      // No row marked preferred: the first term listed stands in.
      c.preferred_name = terms.front();
      terms.erase(terms.begin());
    }
    c.synonyms = std::move(terms);
    concepts.push_back(std::move(c));
  }
  return Lexicon::FromConcepts(std::move(concepts));
}

Lexicon LoadLexicon(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file " + path);
  return ParseLexicon(in, path);
}

ConceptSet ExtractLeafConcepts(const Lexicon &lexicon) {
  ConceptSet leaves;
  for (std::size_t i = 0; i < lexicon.size(); ++i) {
    if (lexicon.children(i).empty()) leaves.insert(lexicon.concepts()[i].id);
  }
  return leaves;
}

ConceptSet ExpandDescendants(const Lexicon &lexicon, const ConceptSet &roots) {
  std::vector<bool> visited(lexicon.size(), false);
  std::deque<std::size_t> queue;
  for (const ConceptId &root : roots) {
    std::size_t i = lexicon.IndexOf(root);
    if (i == Lexicon::npos) {
      throw ValidationError("unknown root concept " + root);
    }
    if (!visited[i]) {
      visited[i] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t child : lexicon.children(i)) {
      if (!visited[child]) {
        visited[child] = true;
        queue.push_back(child);
      }
    }
  }
  ConceptSet result;
  for (std::size_t i = 0; i < visited.size(); ++i) {
    if (visited[i]) result.insert(lexicon.concepts()[i].id);
  }
  return result;
}

Vocabulary Vocabulary::Build(const Lexicon &lexicon, const ConceptSet &selected) {
  if (selected.empty()) throw Error("vocabulary needs at least one concept");
  Vocabulary vocab;
  auto add_term = [&](const ConceptId &id, const std::string &term) {
    std::string folded = FoldCase(term);
    std::vector<Token> tokens = Tokenize(folded);
    if (tokens.empty()) {
      throw ValidationError("term '" + term + "' of concept " + id +
                            " has no word characters");
    }
    std::uint32_t node = kRoot;
    std::string key;
    for (const Token &t : tokens) {
      std::string piece(t.text);
      if (!key.empty()) key += ' ';
      key += piece;
      auto it = vocab.nodes_[node].next.find(piece);
      if (it == vocab.nodes_[node].next.end()) {
        auto child = static_cast<std::uint32_t>(vocab.nodes_.size());
        vocab.nodes_[node].next.emplace(std::move(piece), child);
        vocab.nodes_.emplace_back();
        node = child;
      } else {
        node = it->second;
      }
    }
    auto &ids = vocab.nodes_[node].concepts;
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
      ids.insert(std::upper_bound(ids.begin(), ids.end(), id), id);
    }
    vocab.patterns_[key] = ids;
    vocab.max_tokens_ = std::max(vocab.max_tokens_, tokens.size());
  };
  for (const ConceptId &id : selected) {
    const Concept &c = lexicon.at(id);
    add_term(id, c.preferred_name);
    for (const auto &s : c.synonyms) add_term(id, s);
  }
  return vocab;
}

std::uint32_t Vocabulary::Step(std::uint32_t node,
                               const std::string &folded) const {
  const auto &next = nodes_[node].next;
  auto it = next.find(folded);
  return it == next.end() ? kNone : it->second;
}

}  // namespace acenlp
