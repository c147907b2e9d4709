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

// Writes the synthetic evaluation corpus and its gold annotations.
//
//   acenlp-synth --lexicon lexicon.csv --paraphrases paraphrases.tsv \
//       --roots C9000100,C9000200 --leaf-groups ACE \
//       --corpus corpus.jsonl --gold gold.jsonl

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "acenlp/errors.h"
#include "acenlp/lexicon.h"
#include "acenlp/synth.h"
#include "acenlp/text.h"

int main(int argc, char **argv) {
  CLI::App app{"Generate a synthetic corpus with planted concept structure"};
  std::string lexicon_path, paraphrase_path, corpus_path, gold_path, roots, groups;
  acenlp::SynthOptions options;
  app.add_option("--lexicon", lexicon_path, "Lexicon CSV")->required();
  app.add_option("--paraphrases", paraphrase_path, "concept_id<TAB>phrase file");
  app.add_option("--roots", roots, "Comma list of descendant roots");
  app.add_option("--leaf-groups", groups, "Comma list of groups whose leaves are used");
  app.add_option("--corpus", corpus_path, "Output corpus JSONL")->required();
  app.add_option("--gold", gold_path, "Output gold JSONL")->required();
  app.add_option("--docs", options.num_docs, "Number of documents");
  app.add_option("--seed", options.seed, "Random seed");
  CLI11_PARSE(app, argc, argv);

  try {
    acenlp::Lexicon lexicon = acenlp::LoadLexicon(lexicon_path);
    acenlp::ConceptSet selected;
    auto group_list = acenlp::SplitList(groups, ',');
    auto root_list = acenlp::SplitList(roots, ',');
    if (group_list.empty() && root_list.empty()) {
      for (const auto &c : lexicon.concepts()) selected.insert(c.id);
    } else {
      for (const auto &id : acenlp::ExtractLeafConcepts(lexicon)) {
        for (const auto &g : group_list) {
          if (lexicon.at(id).group == g) selected.insert(id);
        }
      }
      auto expanded = acenlp::ExpandDescendants(
          lexicon, acenlp::ConceptSet(root_list.begin(), root_list.end()));
      selected.insert(expanded.begin(), expanded.end());
    }
    acenlp::ParaphraseTable paraphrases;
    if (!paraphrase_path.empty()) {
      std::ifstream in(paraphrase_path);
      if (!in) throw acenlp::Error("cannot open " + paraphrase_path);
      paraphrases = acenlp::ParseParaphrases(in, paraphrase_path);
    }
    acenlp::SynthCorpus synth =
        acenlp::GenerateSyntheticCorpus(lexicon, selected, paraphrases, options);
    std::ofstream corpus_out(corpus_path, std::ios::binary);
    acenlp::WriteCorpus(corpus_out, synth.corpus);
    std::ofstream gold_out(gold_path, std::ios::binary);
    acenlp::WriteGold(gold_out, synth.gold);
    std::cerr << "wrote " << synth.corpus.size() << " documents and " << synth.gold.size()
              << " gold annotations\n";
  } catch (const std::exception &e) {
    std::cerr << "acenlp-synth: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
