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

#ifndef ACENLP_LEXICON_H_
#define ACENLP_LEXICON_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace acenlp {

// Opaque CUI-style concept identifier, e.g. "C0005586".
using ConceptId = std::string;
using ConceptSet = std::set<ConceptId>;

struct Concept {
  ConceptId id;
  std::string preferred_name;
  std::vector<std::string> synonyms;
  // Direct superclasses. Edges point child -> parent.
  std::vector<ConceptId> parents;
  std::string group;

  bool operator==(const Concept &) const = default;
};

// An immutable, validated concept hierarchy with a term index.
//
// Concepts are kept sorted by id so that position i is stable across runs.
// The term index maps every case-folded preferred name and synonym to the
// concepts that carry it; one term may map to several concepts.
class Lexicon {
 public:
  Lexicon() = default;

  // Validates and canonicalizes. Throws ValidationError on duplicate ids,
  // dangling parent references, empty names, or a hierarchy cycle.
  // Synonyms that duplicate another term of the same concept after case
  // folding are dropped.
  static Lexicon FromConcepts(std::vector<Concept> concepts);

  const std::vector<Concept> &concepts() const { return concepts_; }
  std::size_t size() const { return concepts_.size(); }
  bool empty() const { return concepts_.empty(); }

  // Position of `id` in canonical order, or npos.
  std::size_t IndexOf(std::string_view id) const;
  bool Contains(std::string_view id) const { return IndexOf(id) != npos; }
  const Concept &at(std::string_view id) const;

  // Positions of the direct children of the concept at `index`.
  const std::vector<std::size_t> &children(std::size_t index) const {
    return children_[index];
  }

  const std::map<std::string, ConceptSet> &term_index() const {
    return term_index_;
  }

  bool operator==(const Lexicon &other) const {
    return concepts_ == other.concepts_ && term_index_ == other.term_index_;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<Concept> concepts_;
  std::unordered_map<std::string, std::size_t> positions_;
  std::vector<std::vector<std::size_t>> children_;
  std::map<std::string, ConceptSet> term_index_;
};

// Reads the lexicon CSV: header `concept_id,term,is_preferred,parent_ids,group`,
// one row per (concept, term) pair, `;`-separated parent ids, `#` comments.
// Fields may be double-quoted. Rows of the same concept are merged; repeated
// (term, concept) rows collapse. Throws ParseError (with line number) on
// malformed rows and ValidationError on invariant violations.
Lexicon ParseLexicon(std::istream &in, const std::string &source = "<lexicon>");
Lexicon LoadLexicon(const std::string &path);

// Concepts that are not the parent of any concept.
ConceptSet ExtractLeafConcepts(const Lexicon &lexicon);

// `roots` plus everything reachable from them through child edges. Throws
// ValidationError naming the first unknown root.
ConceptSet ExpandDescendants(const Lexicon &lexicon, const ConceptSet &roots);

// Token-level trie over the case-folded terms of a set of concepts. Each
// term is stored as its token sequence, so matching is aligned to token
// boundaries.
class Vocabulary {
 public:
  struct Node {
    std::unordered_map<std::string, std::uint32_t> next;
    // Concepts whose term ends at this node, sorted.
    std::vector<ConceptId> concepts;
  };

  // Throws Error if `selected` is empty and ValidationError if it names a
  // concept absent from the lexicon or a term without any word characters.
  static Vocabulary Build(const Lexicon &lexicon, const ConceptSet &selected);

  // Number of distinct case-folded patterns.
  std::size_t num_patterns() const { return patterns_.size(); }
  // Longest pattern, in tokens.
  std::size_t max_pattern_tokens() const { return max_tokens_; }

  // Patterns keyed by their folded tokens joined with single spaces.
  const std::map<std::string, std::vector<ConceptId>> &patterns() const {
    return patterns_;
  }

  static constexpr std::uint32_t kRoot = 0;
  static constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

  // Child of `node` along the folded token, or kNone.
  std::uint32_t Step(std::uint32_t node, const std::string &folded) const;
  const Node &node(std::uint32_t id) const { return nodes_[id]; }

 private:
  std::vector<Node> nodes_{Node{}};
  std::map<std::string, std::vector<ConceptId>> patterns_;
  std::size_t max_tokens_ = 0;
};

}  // namespace acenlp

#endif  // ACENLP_LEXICON_H_
