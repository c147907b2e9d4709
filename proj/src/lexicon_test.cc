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
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "acenlp/errors.h"
#include "acenlp/random.h"
#include "acenlp/text.h"
#include "doctest.h"

namespace acenlp {
namespace {

Lexicon Parse(const std::string &csv) {
  std::istringstream in(csv);
  return ParseLexicon(in, "test.csv");
}

const char kHeader[] = "concept_id,term,is_preferred,parent_ids,group\n";

Lexicon Chain() {
  return Parse(std::string(kHeader) +
               "C0,root,1,,g\n"
               "C1,middle,1,C0,g\n"
               "C2,bottom,1,C1,g\n");
}

std::string Id(int i) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "C%02d", i);
  return buf;
}

// Random DAG: every parent has a smaller index than its child.
std::vector<Concept> RandomDag(Rng &rng, int n) {
  std::vector<Concept> out;
  for (int i = 0; i < n; ++i) {
    Concept c;
    c.id = Id(i);
    c.preferred_name = "term " + std::to_string(i);
    c.group = "g";
    for (int p = 0; p < i; ++p) {
      if (rng.Bernoulli(0.08)) c.parents.push_back(Id(p));
    }
    out.push_back(std::move(c));
  }
  rng.Shuffle(out.begin(), out.end());
  return out;
}

ConceptSet BruteLeaves(const std::vector<Concept> &concepts) {
  ConceptSet parents, out;
  for (const auto &c : concepts) parents.insert(c.parents.begin(), c.parents.end());
  for (const auto &c : concepts) {
    if (!parents.count(c.id)) out.insert(c.id);
  }
  return out;
}

// Fixed-point iteration over the edge list.
ConceptSet BruteClosure(const std::vector<Concept> &concepts, ConceptSet set) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto &c : concepts) {
      if (set.count(c.id)) continue;
      for (const auto &p : c.parents) {
        if (set.count(p)) {
          set.insert(c.id);
          grew = true;
          break;
        }
      }
    }
  }
  return set;
}

TEST_CASE("two concepts with three terms") {
  Lexicon lex = Parse(std::string(kHeader) +
                      "C1,child abuse,1,C0,ACE\n"
                      "C1,abuse of child,0,C0,ACE\n"
                      "C0,adverse experience,1,,ACE\n");
  REQUIRE(lex.size() == 2);
  CHECK(lex.concepts()[0].id == "C0");
  CHECK(lex.concepts()[1].id == "C1");
  CHECK(lex.at("C1").preferred_name == "child abuse");
  CHECK(lex.at("C1").synonyms == std::vector<std::string>{"abuse of child"});
  CHECK(lex.at("C1").parents == std::vector<ConceptId>{"C0"});
  CHECK(lex.term_index().size() == 3);
  CHECK(lex.term_index().at("abuse of child") == ConceptSet{"C1"});
}

TEST_CASE("header only and empty input give an empty lexicon") {
  CHECK(Parse(kHeader).empty());
  CHECK(Parse("").empty());
  CHECK(Parse("# comment\n\n" + std::string(kHeader) + "# more\n").empty());
}

TEST_CASE("malformed rows report their line") {
  try {
    Parse(std::string(kHeader) + "C0,root,1,,g\n# c\nC1,child,1\n");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(Parse("id,term\n"), ParseError);
  CHECK_THROWS_AS(Parse(std::string(kHeader) + "C0,root,maybe,,g\n"), ParseError);
  CHECK_THROWS_AS(Parse(std::string(kHeader) + "C0,\"root,1,,g\n"), ParseError);
  CHECK_THROWS_AS(Parse(std::string(kHeader) + ",root,1,,g\n"), ParseError);
}

TEST_CASE("referential and structural violations") {
  CHECK_THROWS_AS(Parse(std::string(kHeader) + "C1,child,1,C9,g\n"), ValidationError);
  CHECK_THROWS_AS(Parse(std::string(kHeader) + "C1,child,1,C1,g\n"), ValidationError);
  CHECK_THROWS_AS(Parse(std::string(kHeader) + "C1,child,1,,g\nC1,other,1,,g\n"),
                  ValidationError);
  CHECK_THROWS_AS(Parse(std::string(kHeader) + "C1,child,1,,g\nC1,kid,0,,h\n"),
                  ValidationError);
  try {
    Parse(std::string(kHeader) +
          "A,a,1,C,g\n"
          "B,b,1,A,g\n"
          "C,c,1,B,g\n"
          "D,d,1,,g\n");
    FAIL("expected a cycle error");
  } catch (const ValidationError &e) {
    std::string what = e.what();
    CHECK(what.find("cycle") != std::string::npos);
    bool names_member = what.find(" A") != std::string::npos ||
                        what.find(" B") != std::string::npos ||
                        what.find(" C") != std::string::npos;
    CHECK(names_member);
  }
}

TEST_CASE("duplicate rows and case-folded synonyms collapse") {
  Lexicon lex = Parse(std::string(kHeader) +
                      "C0,Anxiety,1,,g\n"
                      "C0,anxiety,0,,g\n"
                      "C0,ANXIETY,0,,g\n"
                      "C0,worry,0,,g\n"
                      "C0,worry,0,,g\n");
  CHECK(lex.at("C0").synonyms == std::vector<std::string>{"worry"});
  CHECK(lex.term_index().size() == 2);
}

TEST_CASE("missing preferred row falls back to the first term") {
  Lexicon lex = Parse(std::string(kHeader) + "C0,first,0,,g\nC0,second,0,,g\n");
  CHECK(lex.at("C0").preferred_name == "first");
  CHECK(lex.at("C0").synonyms == std::vector<std::string>{"second"});
}

TEST_CASE("leaves and descendants on a chain") {
  Lexicon lex = Chain();
  CHECK(ExtractLeafConcepts(lex) == ConceptSet{"C2"});
  CHECK(ExpandDescendants(lex, {"C0"}) == ConceptSet{"C0", "C1", "C2"});
  CHECK(ExpandDescendants(lex, {"C2"}) == ConceptSet{"C2"});
  CHECK(ExpandDescendants(lex, {}).empty());
  CHECK_THROWS_WITH_AS(ExpandDescendants(lex, {"C7"}), doctest::Contains("C7"),
                       ValidationError);
}

TEST_CASE("no parent edges means every concept is a leaf") {
  Lexicon lex = Parse(std::string(kHeader) + "A,a,1,,g\nB,b,1,,g\nC,c,1,,g\n");
  CHECK(ExtractLeafConcepts(lex) == ConceptSet{"A", "B", "C"});
}

TEST_CASE("random DAGs agree with brute-force leaves and closure") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Concept> concepts = RandomDag(rng, 30);
    Lexicon lex = Lexicon::FromConcepts(concepts);
    CHECK(ExtractLeafConcepts(lex) == BruteLeaves(concepts));

    ConceptSet a, b;
    for (int i = 0; i < 30; ++i) {
      if (rng.Bernoulli(0.1)) a.insert(Id(i));
    }
    b = a;
    for (int i = 0; i < 30; ++i) {
      if (rng.Bernoulli(0.1)) b.insert(Id(i));
    }
    ConceptSet ea = ExpandDescendants(lex, a);
    ConceptSet eb = ExpandDescendants(lex, b);
    CHECK(ea == BruteClosure(concepts, a));
    CHECK(ExpandDescendants(lex, ea) == ea);
    CHECK(std::includes(eb.begin(), eb.end(), ea.begin(), ea.end()));
    CHECK(std::includes(ea.begin(), ea.end(), a.begin(), a.end()));
  }
}

TEST_CASE("concept order is canonical regardless of input order") {
  Rng rng(3);
  std::vector<Concept> concepts = RandomDag(rng, 20);
  Lexicon first = Lexicon::FromConcepts(concepts);
  rng.Shuffle(concepts.begin(), concepts.end());
  Lexicon second = Lexicon::FromConcepts(concepts);
  CHECK(first == second);
  for (std::size_t i = 1; i < first.size(); ++i) {
    CHECK(first.concepts()[i - 1].id < first.concepts()[i].id);
  }
}

TEST_CASE("loading the same bytes twice is deterministic") {
  std::string csv = std::string(kHeader) +
                    "C2,b,1,C1,g\nC1,a,1,,g\nC1,\"a, quoted\",0,,g\n";
  CHECK(Parse(csv) == Parse(csv));
  CHECK(Parse(csv).at("C1").synonyms == std::vector<std::string>{"a, quoted"});
}

TEST_CASE("every term is indexed") {
  Lexicon lex = Parse(std::string(kHeader) +
                      "C0,Mental Disorder,1,,m\n"
                      "C1,depression,1,C0,m\nC1,low mood,0,C0,m\n"
                      "C2,Depression,1,C0,m\n");
  for (const auto &c : lex.concepts()) {
    CHECK(lex.term_index().at(FoldCase(c.preferred_name)).count(c.id) == 1);
    for (const auto &s : c.synonyms) {
      CHECK(lex.term_index().at(FoldCase(s)).count(c.id) == 1);
    }
  }
  CHECK(lex.term_index().at("depression") == ConceptSet{"C1", "C2"});
}

TEST_CASE("vocabulary over a small lexicon") {
  Lexicon lex = Parse(std::string(kHeader) +
                      "C1,child abuse,1,C0,ACE\n"
                      "C1,abuse of child,0,C0,ACE\n"
                      "C0,adverse experience,1,,ACE\n");
  Vocabulary vocab = Vocabulary::Build(lex, {"C0", "C1"});
  CHECK(vocab.num_patterns() == 3);
  CHECK(vocab.max_pattern_tokens() == 3);
  CHECK(vocab.patterns().at("abuse of child") == std::vector<ConceptId>{"C1"});

  Vocabulary part = Vocabulary::Build(lex, {"C1"});
  CHECK(part.num_patterns() == 2);
  auto n = part.Step(Vocabulary::kRoot, "child");
  REQUIRE(n != Vocabulary::kNone);
  n = part.Step(n, "abuse");
  REQUIRE(n != Vocabulary::kNone);
  CHECK(part.node(n).concepts == std::vector<ConceptId>{"C1"});
  CHECK(part.Step(Vocabulary::kRoot, "adverse") == Vocabulary::kNone);
}

TEST_CASE("a shared term maps to every concept carrying it") {
  Lexicon lex = Parse(std::string(kHeader) +
                      "C1,depression,1,,m\nC2,Depression,1,,m\nC2,low mood,0,,m\n");
  Vocabulary vocab = Vocabulary::Build(lex, {"C1", "C2"});
  CHECK(vocab.num_patterns() == 2);
  CHECK(vocab.patterns().at("depression") == std::vector<ConceptId>{"C1", "C2"});
}

TEST_CASE("vocabulary preconditions") {
  Lexicon lex = Chain();
  CHECK_THROWS_AS(Vocabulary::Build(lex, {}), Error);
  CHECK_THROWS_AS(Vocabulary::Build(lex, {"C9"}), ValidationError);
  Lexicon punct = Parse(std::string(kHeader) + "C0,--,1,,g\n");
  CHECK_THROWS_AS(Vocabulary::Build(punct, {"C0"}), ValidationError);
}

}  // namespace
}  // namespace acenlp
