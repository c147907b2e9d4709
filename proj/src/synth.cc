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

#include "acenlp/synth.h"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <optional>
#include <tuple>

#include "acenlp/errors.h"
#include "acenlp/random.h"
#include "acenlp/text.h"

namespace acenlp {

namespace {

// `{}` marks where the concept term goes.
const char *const kGenuineTemplates[] = {
    "I have been struggling with {} for a while.",
    "My therapist thinks it is {}.",
    "Honestly the {} is getting worse every month.",
    "Dealing with {} again this week.",
    "Has anyone else here lived with {}?",
    "It all started with {} when I was younger.",
    "Growing up there was a lot of {} around me.",
    "I finally told my doctor about the {}.",
    "Some days the {} feels impossible to carry.",
    "My sister went through {} too.",
};

const char *const kIdiomTemplates[] = {
    "lol this traffic is giving me {} today.",
    "My phone battery has some serious {} energy.",
    "That final exam was pure {} haha.",
    "The group chat is basically {} at this point.",
};

const char *const kNegatedTemplates[] = {
    "There was never any {} in my house.",
    "I do not have {} as far as I know.",
    "No {} on my side, just tired.",
};

const char *const kParaphraseTemplates[] = {
    "Some nights I just want to {}.",
    "Lately I keep thinking I should {}.",
    "Part of me says {}.",
};

const char *const kFillers[] = {
    "I don't know what to do anymore.",
    "Work has been busy lately.",
    "Thanks for reading this far.",
    "My cat keeps me company most evenings.",
    "I went for a walk today and it helped a little.",
    "Any advice would help.",
    "Sorry for the long post.",
    "I started journaling last month.",
    "My friends say I should talk to someone.",
    "Sleep has been all over the place.",
};

const char *const kSubreddits[] = {"r/mentalhealth", "r/depression", "r/anxiety",
                                   "r/offmychest", "r/adhd", "r/lonely"};

struct Sentence {
  std::string text;
  // Annotated span relative to the sentence.
  std::optional<GoldAnnotation> annotation;
};

template <std::size_t N>
const char *Pick(Rng &rng, const char *const (&items)[N]) {
  return items[rng.Below(N)];
}

Sentence Fill(const char *tmpl, const std::string &phrase, const ConceptId &concept_id,
              GoldLabel label) {
  std::string t(tmpl);
  std::size_t hole = t.find("{}");
  Sentence s;
  s.text = t.substr(0, hole) + phrase + t.substr(hole + 2);
  GoldAnnotation g;
  g.start = hole;
  g.end = hole + phrase.size();
  g.concept_id = concept_id;
  g.label = label;
  s.annotation = g;
  return s;
}

}  // namespace

ParaphraseTable ParseParaphrases(std::istream &in, const std::string &source) {
  ParaphraseTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto tab = trimmed.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(source, line_no, "expected concept_id<TAB>phrase");
    }
    std::string id(Trim(trimmed.substr(0, tab)));
    std::string phrase(Trim(trimmed.substr(tab + 1)));
    if (id.empty() || phrase.empty()) throw ParseError(source, line_no, "empty field");
    table[id].push_back(phrase);
  }
  return table;
}

std::map<ConceptId, ConceptId> ConceptFamilies(const Lexicon &lexicon,
                                               const ConceptSet &selected) {
  std::map<ConceptId, ConceptId> families;
  for (const ConceptId &id : selected) {
    const Concept *current = &lexicon.at(id);
    while (!current->parents.empty()) {
      const Concept &parent = lexicon.at(current->parents.front());
      if (parent.parents.empty()) break;
      current = &parent;
    }
    families[id] = current->id;
  }
  return families;
}

SynthCorpus GenerateSyntheticCorpus(const Lexicon &lexicon, const ConceptSet &selected,
                                    const ParaphraseTable &paraphrases,
                                    const SynthOptions &options) {
  std::map<ConceptId, std::vector<ConceptId>> members;
  for (const auto &[id, family] : ConceptFamilies(lexicon, selected)) {
    members[family].push_back(id);
  }
  std::vector<const std::vector<ConceptId> *> topics;
  std::vector<ConceptId> all(selected.begin(), selected.end());
  for (const auto &[family, ids] : members) {
    if (ids.size() >= 2) topics.push_back(&ids);
  }
  if (topics.size() < 2) {
    throw Error("synthetic corpus needs at least two concept families of size two");
  }
  std::map<ConceptId, ConceptId> family_of = ConceptFamilies(lexicon, selected);

  Rng rng(options.seed);
  auto term_of = [&](const ConceptId &id) {
    const Concept &c = lexicon.at(id);
    std::size_t k = rng.Below(c.synonyms.size() + 1);
    std::string term = k == 0 ? c.preferred_name : c.synonyms[k - 1];
    if (rng.Bernoulli(0.1) && !term.empty() && term[0] >= 'a' && term[0] <= 'z') {
      term[0] = static_cast<char>(term[0] - 'a' + 'A');
    }
    return term;
  };
  auto off_family = [&](const ConceptId &family) {
    for (;;) {
      const ConceptId &id = all[rng.Below(all.size())];
      if (family_of.at(id) != family) return id;
    }
  };

  std::vector<Document> docs;
  std::vector<GoldAnnotation> gold;
  const int width = options.num_docs < 10000 ? 4 : 8;
  for (std::size_t d = 0; d < options.num_docs; ++d) {
    char id_buf[32];
    std::snprintf(id_buf, sizeof id_buf, "post_%0*zu", width, d + 1);
    std::vector<Sentence> sentences;

    if (!rng.Bernoulli(options.p_empty)) {
      const std::vector<ConceptId> &topic = *topics[rng.Below(topics.size())];
      const ConceptId &family = family_of.at(topic.front());
      std::vector<ConceptId> pool = topic;
      rng.Shuffle(pool.begin(), pool.end());
      std::size_t count = rng.Bernoulli(options.p_single_concept)
                              ? 1
                              : std::min<std::size_t>(pool.size(), 2 + rng.Below(3));
      for (std::size_t i = 0; i < count; ++i) {
        int repeats = rng.Bernoulli(options.p_second_mention) ? 2 : 1;
        for (int r = 0; r < repeats; ++r) {
          sentences.push_back(Fill(Pick(rng, kGenuineTemplates), term_of(pool[i]), pool[i],
                                   GoldLabel::kNlpTrue));
        }
      }
      if (rng.Bernoulli(options.p_cross_family)) {
        ConceptId other = off_family(family);
        sentences.push_back(
            Fill(Pick(rng, kGenuineTemplates), term_of(other), other, GoldLabel::kNlpTrue));
      }
      if (rng.Bernoulli(options.p_noise)) {
        ConceptId other = off_family(family);
        sentences.push_back(
            Fill(Pick(rng, kIdiomTemplates), term_of(other), other, GoldLabel::kNotAces));
      }
      if (rng.Bernoulli(options.p_negated)) {
        ConceptId other = all[rng.Below(all.size())];
        sentences.push_back(
            Fill(Pick(rng, kNegatedTemplates), term_of(other), other, GoldLabel::kNotAces));
      }
      if (rng.Bernoulli(options.p_paraphrase)) {
        std::vector<const std::pair<const ConceptId, std::vector<std::string>> *> options_here;
        for (const ConceptId &c : topic) {
          auto it = paraphrases.find(c);
          if (it != paraphrases.end() && !it->second.empty()) options_here.push_back(&*it);
        }
        if (!options_here.empty()) {
          const auto &[target, phrases] = *options_here[rng.Below(options_here.size())];
          sentences.push_back(Fill(Pick(rng, kParaphraseTemplates),
                                   phrases[rng.Below(phrases.size())], target,
                                   GoldLabel::kManualAces));
        }
      }
    }
    std::size_t fillers = 1 + rng.Below(3);
    for (std::size_t i = 0; i < fillers; ++i) sentences.push_back({Pick(rng, kFillers), {}});
    rng.Shuffle(sentences.begin(), sentences.end());

    Document doc;
    doc.id = id_buf;
    doc.meta["subreddit"] = Pick(rng, kSubreddits);
    for (const Sentence &s : sentences) {
      if (!doc.text.empty()) doc.text += rng.Bernoulli(0.2) ? "\n" : " ";
      if (s.annotation) {
        GoldAnnotation g = *s.annotation;
        g.doc_id = doc.id;
        g.start += doc.text.size();
        g.end += doc.text.size();
        gold.push_back(std::move(g));
      }
      doc.text += s.text;
    }
    docs.push_back(std::move(doc));
  }

  std::sort(gold.begin(), gold.end(), [](const GoldAnnotation &a, const GoldAnnotation &b) {
    return std::tie(a.doc_id, a.start) < std::tie(b.doc_id, b.start);
  });
  return {Corpus::FromDocuments(std::move(docs)), std::move(gold)};
}

}  // namespace acenlp
