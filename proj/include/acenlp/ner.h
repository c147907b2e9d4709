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

#ifndef ACENLP_NER_H_
#define ACENLP_NER_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "acenlp/corpus.h"
#include "acenlp/lexicon.h"

namespace acenlp {

// One located concept occurrence. `surface` is text[start, end).
struct Mention {
  std::string doc_id;
  ConceptId concept_id;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  bool filtered = false;
  std::optional<std::string> filter_reason;

  bool operator==(const Mention &) const = default;
};

// Canonical output order: (doc_id, start, concept_id).
bool MentionLess(const Mention &a, const Mention &b);

// Dictionary lookup over whole tokens, case-insensitive. Overlapping
// candidate spans are resolved greedily: the longer span (in bytes) wins,
// then the earlier one. A surviving span carried by several concepts yields
// one mention per concept. Result is sorted by (start, concept_id).
std::vector<Mention> FindMentions(const Document &doc, const Vocabulary &vocab);

// Declarative post-filters for mentions.
struct FilterRules {
  // Cue phrases, matched case-insensitively on whole tokens.
  std::vector<std::string> negation_cues;
  // How many tokens before a mention are searched for a cue. The window
  // never crosses a sentence boundary (. ! ? or newline).
  int negation_window = 3;
  // Case-folded surfaces that are never accepted.
  std::vector<std::string> stop_surfaces;

  static FilterRules Defaults();
};

// Flags (never drops) mentions preceded by a negation cue within the window
// (reason "negation:<cue>", nearest cue wins) or whose surface is on the stop
// list (reason "stop:<surface>"). Spans and concepts are left untouched;
// mentions that are already flagged pass through.
std::vector<Mention> ApplyFilterRules(std::vector<Mention> mentions,
                                      const Document &doc,
                                      const FilterRules &rules);

// FindMentions + ApplyFilterRules over a whole corpus, documents split over
// `threads` workers. Output is in canonical order regardless of threads.
std::vector<Mention> AnnotateCorpus(const Corpus &corpus, const Vocabulary &vocab,
                                    const FilterRules &rules, int threads = 1);

// JSONL with fields doc_id, concept_id, start, end, surface, filtered,
// filter_reason (null when unfiltered).
void WriteMentions(std::ostream &out, const std::vector<Mention> &mentions);
std::vector<Mention> ReadMentions(std::istream &in,
                                  const std::string &source = "<mentions>");

}  // namespace acenlp

#endif  // ACENLP_NER_H_
