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

#include "acenlp/selflabel.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "acenlp/errors.h"
#include "acenlp/random.h"
#include "doctest.h"

namespace acenlp {
namespace {

Mention M(const std::string &doc, const std::string &concept_id, std::size_t start,
          bool filtered = false) {
  Mention m;
  m.doc_id = doc;
  m.concept_id = concept_id;
  m.start = start;
  m.end = start + 1;
  m.surface = "x";
  m.filtered = filtered;
  if (filtered) m.filter_reason = "negation:no";
  return m;
}

struct Toy {
  Lexicon lexicon;
  Corpus corpus;
  std::vector<Mention> mentions;
  DocConceptMatrix x;
  std::vector<Vector> raw;
};

// d0 = {A, B, C}, d1 = {A, B}, d2 = {C}.
Toy MakeToy() {
  Toy t;
  t.lexicon = Lexicon::FromConcepts({Concept{"A", "a", {}, {}, "g"},
                                     Concept{"B", "b", {}, {}, "g"},
                                     Concept{"C", "c", {}, {}, "g"}});
  t.corpus = Corpus::FromDocuments({{"d0", "", {}}, {"d1", "", {}}, {"d2", "", {}}});
  t.mentions = {M("d0", "A", 0), M("d0", "B", 2), M("d0", "C", 4),
                M("d1", "A", 0), M("d1", "B", 2), M("d2", "C", 0)};
  t.x = BuildDocConceptMatrix(t.corpus, t.mentions, t.lexicon);
  CoocMatrix cooc = BuildCoocMatrix(t.x);
  for (std::size_t i = 0; i < 3; ++i) t.raw.push_back(ConceptEmbedding(cooc, i, false));
  return t;
}

TEST_CASE("three-concept toy corpus by hand") {
  Toy t = MakeToy();
  REQUIRE(t.raw == std::vector<Vector>{{2, 2, 1}, {2, 2, 1}, {1, 1, 2}});
  auto scored = ScoreMentions(t.mentions, t.x, t.raw);
  REQUIRE(scored.size() == 6);
  CHECK(scored[0].score == doctest::Approx(5.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-12));
  CHECK(scored[2].score == doctest::Approx(2.0 / std::sqrt(6.0)).epsilon(1e-12));
  CHECK(scored[3].score == 1.0);
  CHECK(scored[4].score == 1.0);
  // Only concept in its document: empty context.
  CHECK(scored[5].score == 0.0);
  for (std::size_t i = 0; i < 6; ++i) CHECK(scored[i].mention == t.mentions[i]);
}

TEST_CASE("scores are invariant under rescaling the embeddings") {
  Toy t = MakeToy();
  Rng rng(3);
  auto base = ScoreMentions(t.mentions, t.x, t.raw);
  for (int trial = 0; trial < 20; ++trial) {
    double alpha = rng.Uniform(1e-3, 1e3);
    std::vector<Vector> scaled = t.raw;
    for (auto &v : scaled) {
      for (auto &e : v) e *= alpha;
    }
    auto s = ScoreMentions(t.mentions, t.x, scaled);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(std::abs(s[i].score - base[i].score) <= 1e-12);
    }
  }
}

TEST_CASE("missing embeddings") {
  Toy t = MakeToy();
  std::vector<Mention> ms = t.mentions;
  ms.push_back(M("d1", "Z", 5, true));
  auto scored = ScoreMentions(ms, t.x, t.raw);
  CHECK(scored.back().score == 0.0);
  CHECK(scored.back().mention.filtered);
  ms.push_back(M("d1", "Z", 7, false));
  CHECK_THROWS_WITH_AS(ScoreMentions(ms, t.x, t.raw), doctest::Contains("Z"),
                       ValidationError);
  std::vector<Vector> two(t.raw.begin(), t.raw.begin() + 2);
  CHECK_THROWS_AS(ScoreMentions(t.mentions, t.x, two), ValidationError);
}

std::vector<ScoredMention> WithScores(const std::vector<double> &scores,
                                      const std::vector<bool> &filtered = {}) {
  std::vector<ScoredMention> out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    bool f = i < filtered.size() && filtered[i];
    out.push_back({M("d", "C", 2 * i, f), scores[i]});
  }
  return out;
}

std::vector<bool> Labels(const std::vector<LabeledMention> &l) {
  std::vector<bool> out;
  for (const auto &m : l) out.push_back(m.label);
  return out;
}

TEST_CASE("label at threshold") {
  auto s = WithScores({0.2, 0.5, 0.9});
  CHECK(Labels(LabelAtThreshold(s, 0.5)) == std::vector<bool>{false, true, true});
  CHECK(Labels(LabelAtThreshold(s, -1)) == std::vector<bool>{true, true, true});
  CHECK(Labels(LabelAtThreshold(WithScores({1.0, 0.999}), 1.0)) ==
        std::vector<bool>{true, false});
  CHECK_THROWS_AS(LabelAtThreshold(s, 1.0001), Error);
  CHECK_THROWS_AS(LabelAtThreshold(s, -1.5), Error);
  auto f = WithScores({0.9, 0.9}, {true, false});
  CHECK(Labels(LabelAtThreshold(f, -1)) == std::vector<bool>{false, true});
  std::vector<Mention> ms = {M("d", "A", 0), M("d", "B", 2, true)};
  CHECK(Labels(LabelUnfiltered(ms)) == std::vector<bool>{true, false});
}

TEST_CASE("positives shrink as the threshold rises") {
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> scores;
    std::vector<bool> filtered;
    for (int i = 0; i < 40; ++i) {
      scores.push_back(rng.Uniform(-1, 1));
      filtered.push_back(rng.Bernoulli(0.2));
    }
    auto s = WithScores(scores, filtered);
    std::vector<bool> prev(40, true);
    ThresholdSweep sweep = ThresholdSweep::Range(-1, 1, 0.1);
    for (double tau : sweep.thresholds()) {
      auto cur = Labels(LabelAtThreshold(s, tau));
      for (int i = 0; i < 40; ++i) {
        CHECK((!cur[i] || prev[i]));
        if (filtered[i]) CHECK_FALSE(cur[i]);
      }
      prev = cur;
    }
  }
}

TEST_CASE("threshold sweeps") {
  auto d = ThresholdSweep::Default().thresholds();
  REQUIRE(d.size() == 21);
  CHECK(d.front() == 0.0);
  CHECK(d[7] == 0.35);
  CHECK(d.back() == 1.0);
  CHECK(ThresholdSweep::Range(-1, 1, 0.5).thresholds() ==
        std::vector<double>{-1, -0.5, 0, 0.5, 1});
  CHECK_THROWS_AS(ThresholdSweep({}), Error);
  CHECK_THROWS_AS(ThresholdSweep({0.5, 0.5}), Error);
  CHECK_THROWS_AS(ThresholdSweep({0.5, 0.2}), Error);
  CHECK_THROWS_AS(ThresholdSweep({0.0, 1.5}), Error);
  CHECK_THROWS_AS(ThresholdSweep::Range(0, 1, 0), Error);
}

TEST_CASE("scored mentions and label files") {
  auto s = WithScores({0.25, 1.0 / 3.0}, {false, true});
  std::ostringstream out;
  WriteScoredMentions(out, s);
  std::istringstream in(out.str());
  CHECK(ReadScoredMentions(in) == s);

  std::ostringstream csv;
  WriteLabelsCsv(csv, s, 0.3);
  CHECK(csv.str() ==
        "doc_id,start,end,concept_id,score,label\n"
        "d,0,1,C,0.25,0\n"
        "d,2,3,C,0.3333333333333333,0\n");
  std::istringstream bad("{\"doc_id\": 3}\n");
  CHECK_THROWS_AS(ReadScoredMentions(bad), ParseError);
}

}  // namespace
}  // namespace acenlp
