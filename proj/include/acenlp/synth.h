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

#ifndef ACENLP_SYNTH_H_
#define ACENLP_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "acenlp/corpus.h"
#include "acenlp/eval.h"
#include "acenlp/lexicon.h"

namespace acenlp {

// Synthetic forum corpus with planted concept co-occurrence and gold labels
// known by construction.
//
// Selected concepts are grouped into families by their ancestor directly
// below a hierarchy root. Each post picks a family and mentions several of
// its concepts (NLP_TRUE). Posts may also carry an off-family concept in a
// throwaway idiom (Not_ACEs), a negated concept (Not_ACEs, removed by the
// negation rule), an off-family concept used genuinely (NLP_TRUE), or a
// paraphrase absent from the lexicon (Manual_ACEs).
struct SynthOptions {
  std::size_t num_docs = 240;
  std::uint64_t seed = 7;
  double p_second_mention = 0.3;
  double p_cross_family = 0.15;
  double p_noise = 0.35;
  double p_negated = 0.15;
  double p_paraphrase = 0.3;
  double p_single_concept = 0.1;
  double p_empty = 0.04;
};

struct SynthCorpus {
  Corpus corpus;
  std::vector<GoldAnnotation> gold;  // sorted by (doc_id, start)
};

// concept id -> paraphrases that name the concept without using any of its
// lexicon terms.
using ParaphraseTable = std::map<ConceptId, std::vector<std::string>>;

// TSV: concept_id <TAB> phrase, `#` comments.
ParaphraseTable ParseParaphrases(std::istream &in, const std::string &source = "<paraphrases>");

// Throws Error when fewer than two families have at least two concepts.
SynthCorpus GenerateSyntheticCorpus(const Lexicon &lexicon, const ConceptSet &selected,
                                    const ParaphraseTable &paraphrases,
                                    const SynthOptions &options);

// Family key of every selected concept (see SynthCorpus).
std::map<ConceptId, ConceptId> ConceptFamilies(const Lexicon &lexicon,
                                               const ConceptSet &selected);

}  // namespace acenlp

#endif  // ACENLP_SYNTH_H_
