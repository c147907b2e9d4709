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

#include "acenlp/ner.h"

#include <algorithm>
#include <istream>
#include <iterator>
#include <ostream>
#include <set>
#include <thread>
#include <tuple>

#include "acenlp/errors.h"
#include "acenlp/text.h"
#include "acenlp/tokenizer.h"
#include "json.hpp"

namespace acenlp {

using json = nlohmann::json;

bool MentionLess(const Mention &a, const Mention &b) {
  return std::tie(a.doc_id, a.start, a.concept_id, a.end) <
         std::tie(b.doc_id, b.start, b.concept_id, b.end);
}

std::vector<Mention> FindMentions(const Document &doc, const Vocabulary &vocab) {
  const std::string &text = doc.text;
  std::vector<Token> tokens = Tokenize(text);
  std::vector<std::string> folded;
  folded.reserve(tokens.size());
  for (const Token &t : tokens) folded.push_back(FoldCase(t.text));

  struct Candidate {
    std::size_t first, last;  // token range, inclusive
    std::uint32_t node;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::uint32_t node = Vocabulary::kRoot;
    for (std::size_t j = i; j < tokens.size(); ++j) {
      if (j > i) {
        std::string_view gap(text.data() + tokens[j - 1].end,
                             tokens[j].start - tokens[j - 1].end);
        if (!IsJoiningGap(gap)) break;
      }
      node = vocab.Step(node, folded[j]);
      if (node == Vocabulary::kNone) break;
      if (!vocab.node(node).concepts.empty()) candidates.push_back({i, j, node});
    }
  }

  auto length = [&](const Candidate &c) {
    return tokens[c.last].end - tokens[c.first].start;
  };
  std::sort(candidates.begin(), candidates.end(),
            [&](const Candidate &a, const Candidate &b) {
              std::size_t la = length(a), lb = length(b);
              if (la != lb) return la > lb;
              return a.first < b.first;
            });

  std::vector<bool> taken(tokens.size(), false);
  std::vector<Mention> mentions;
  for (const Candidate &c : candidates) {
    bool free = true;
    for (std::size_t k = c.first; k <= c.last && free; ++k) free = !taken[k];
    if (!free) continue;
    for (std::size_t k = c.first; k <= c.last; ++k) taken[k] = true;
    std::size_t start = tokens[c.first].start;
    std::size_t end = tokens[c.last].end;
    for (const ConceptId &id : vocab.node(c.node).concepts) {
      Mention m;
      m.doc_id = doc.id;
      m.concept_id = id;
      m.start = start;
      m.end = end;
      m.surface = text.substr(start, end - start);
      mentions.push_back(std::move(m));
    }
  }
  std::sort(mentions.begin(), mentions.end(), MentionLess);
  return mentions;
}

FilterRules FilterRules::Defaults() {
  FilterRules rules;
  rules.negation_cues = {"no", "not", "never", "without", "denies", "denied",
                         "deny"};
  rules.negation_window = 3;
  return rules;
}

std::vector<Mention> ApplyFilterRules(std::vector<Mention> mentions,
                                      const Document &doc,
                                      const FilterRules &rules) {
  if (mentions.empty()) return mentions;
  if (rules.negation_cues.empty() && rules.stop_surfaces.empty()) return mentions;

  std::vector<Token> tokens = Tokenize(doc.text);
  std::vector<std::string> folded;
  std::vector<std::size_t> sentence(tokens.size(), 0);
  std::size_t current = 0;
  std::size_t scanned = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::size_t pos = scanned;
    while (pos < tokens[i].start) {
      if (IsSentenceBoundary(NextCodePoint(doc.text, pos))) ++current;
    }
    scanned = tokens[i].end;
    sentence[i] = current;
    folded.push_back(FoldCase(tokens[i].text));
  }

  struct Cue {
    std::string name;
    std::vector<std::string> tokens;
  };
  std::vector<Cue> cues;
  for (const std::string &cue : rules.negation_cues) {
    std::string f = FoldCase(cue);
    Cue c{std::string(Trim(f)), {}};
    for (const Token &t : Tokenize(f)) c.tokens.emplace_back(t.text);
    if (!c.tokens.empty()) cues.push_back(std::move(c));
  }
  std::set<std::string> stops;
  for (const std::string &s : rules.stop_surfaces) {
    stops.insert(FoldCase(Trim(s)));
  }
  const std::size_t window =
      rules.negation_window > 0 ? static_cast<std::size_t>(rules.negation_window) : 0;

  for (Mention &m : mentions) {
    if (m.filtered) continue;
    auto it = std::lower_bound(
        tokens.begin(), tokens.end(), m.start,
        [](const Token &t, std::size_t offset) { return t.start < offset; });
    if (it == tokens.end() || it->start != m.start) {
      throw ValidationError("mention at " + std::to_string(m.start) + " in " +
                            doc.id + " is not token aligned");
    }
    const std::size_t first = static_cast<std::size_t>(it - tokens.begin());
    const std::size_t lo = first >= window ? first - window : 0;

    // Scan cue end positions from nearest to farthest.
    std::optional<std::string> reason;
    for (std::size_t end = first; end > lo && !reason; --end) {
      for (const Cue &cue : cues) {
        std::size_t n = cue.tokens.size();
        if (n > end - lo) continue;
        std::size_t begin = end - n;
        bool hit = true;
        for (std::size_t k = 0; k < n && hit; ++k) {
          hit = folded[begin + k] == cue.tokens[k] &&
                sentence[begin + k] == sentence[first];
        }
        if (hit) {
          reason = "negation:" + cue.name;
          break;
        }
      }
    }
    if (!reason) {
      std::string surface = FoldCase(m.surface);
      if (stops.count(surface)) reason = "stop:" + surface;
    }
    if (reason) {
      m.filtered = true;
      m.filter_reason = std::move(reason);
    }
  }
  return mentions;
}

std::vector<Mention> AnnotateCorpus(const Corpus &corpus, const Vocabulary &vocab,
                                    const FilterRules &rules, int threads) {
  const std::size_t n = corpus.size();
  std::vector<std::vector<Mention>> per_doc(n);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      per_doc[i] = ApplyFilterRules(FindMentions(corpus[i], vocab), corpus[i], rules);
    }
  };
  std::size_t workers = std::clamp<std::size_t>(threads > 0 ? threads : 1, 1,
                                                std::max<std::size_t>(n, 1));
  if (workers == 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(work, n * w / workers, n * (w + 1) / workers);
    }
  }
  std::vector<Mention> all;
  for (auto &v : per_doc) {
    std::move(v.begin(), v.end(), std::back_inserter(all));
  }
  return all;
}

void WriteMentions(std::ostream &out, const std::vector<Mention> &mentions) {
  std::vector<const Mention *> order;
  order.reserve(mentions.size());
  for (const Mention &m : mentions) order.push_back(&m);
  std::stable_sort(order.begin(), order.end(),
                   [](const Mention *a, const Mention *b) { return MentionLess(*a, *b); });
  for (const Mention *m : order) {
    json obj = {{"doc_id", m->doc_id},   {"concept_id", m->concept_id},
                {"start", m->start},     {"end", m->end},
                {"surface", m->surface}, {"filtered", m->filtered},
                {"filter_reason", nullptr}};
    if (m->filter_reason) obj["filter_reason"] = *m->filter_reason;
    out << obj.dump() << '\n';
  }
}

std::vector<Mention> ReadMentions(std::istream &in, const std::string &source) {
  std::vector<Mention> mentions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      json obj = json::parse(line);
      Mention m;
      m.doc_id = obj.at("doc_id").get<std::string>();
      m.concept_id = obj.at("concept_id").get<std::string>();
      m.start = obj.at("start").get<std::size_t>();
      m.end = obj.at("end").get<std::size_t>();
      m.surface = obj.at("surface").get<std::string>();
      m.filtered = obj.at("filtered").get<bool>();
      if (auto r = obj.find("filter_reason"); r != obj.end() && !r->is_null()) {
        m.filter_reason = r->get<std::string>();
      }
      mentions.push_back(std::move(m));
    } catch (const json::exception &e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return mentions;
}

}  // namespace acenlp
