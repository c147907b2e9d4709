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
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>

#include "acenlp/errors.h"
#include "acenlp/text.h"
#include "json.hpp"

namespace acenlp {

using json = nlohmann::json;

std::vector<ScoredMention> ScoreMentions(std::span<const Mention> mentions,
                                         const DocConceptMatrix &x,
                                         std::span<const Vector> embeddings) {
  if (embeddings.size() != x.m_concepts()) {
    throw ValidationError("expected " + std::to_string(x.m_concepts()) +
                          " embeddings, got " + std::to_string(embeddings.size()));
  }
  std::unordered_map<std::string, std::size_t> doc_index;
  for (std::size_t d = 0; d < x.n_docs(); ++d) doc_index.emplace(x.doc_ids[d], d);

  // Context vectors are shared by every mention of a concept in a document.
  std::map<std::pair<std::size_t, std::size_t>, double> cache;
  std::vector<ScoredMention> out;
  out.reserve(mentions.size());
  for (const Mention &m : mentions) {
    std::size_t c = x.ConceptIndex(m.concept_id);
    if (c == static_cast<std::size_t>(-1)) {
      if (m.filtered) {
        out.push_back({m, 0.0});
        continue;
      }
      throw ValidationError("no embedding for concept " + m.concept_id);
    }
    auto doc = doc_index.find(m.doc_id);
    if (doc == doc_index.end()) {
      throw ValidationError("mention references unknown document '" + m.doc_id + "'");
    }
    auto key = std::make_pair(doc->second, c);
    auto it = cache.find(key);
    if (it == cache.end()) {
      Vector context = DocumentContextVector(x, embeddings, doc->second, c);
      it = cache.emplace(key, CosineSimilarity(embeddings[c], context)).first;
    }
    out.push_back({m, it->second});
  }
  return out;
}

std::vector<LabeledMention> LabelAtThreshold(std::span<const ScoredMention> scored,
                                             double tau) {
  if (!(tau >= -1.0 && tau <= 1.0)) {
    throw Error("threshold " + std::to_string(tau) + " outside [-1, 1]");
  }
  std::vector<LabeledMention> out;
  out.reserve(scored.size());
  for (const ScoredMention &s : scored) {
    out.push_back({s.mention, !s.mention.filtered && s.score >= tau});
  }
  return out;
}

std::vector<LabeledMention> LabelUnfiltered(std::span<const Mention> mentions) {
  std::vector<LabeledMention> out;
  out.reserve(mentions.size());
  for (const Mention &m : mentions) out.push_back({m, !m.filtered});
  return out;
}

ThresholdSweep::ThresholdSweep(std::vector<double> thresholds)
    : thresholds_(std::move(thresholds)) {
  if (thresholds_.empty()) throw Error("threshold sweep is empty");
  for (std::size_t i = 0; i < thresholds_.size(); ++i) {
    double t = thresholds_[i];
    if (!(t >= -1.0 && t <= 1.0)) {
      throw Error("threshold " + std::to_string(t) + " outside [-1, 1]");
    }
    if (i > 0 && !(t > thresholds_[i - 1])) {
      throw Error("thresholds must be strictly increasing");
    }
  }
}

ThresholdSweep ThresholdSweep::Default() { return Range(0.0, 1.0, 0.05); }

ThresholdSweep ThresholdSweep::Range(double start, double stop, double step) {
  if (!(step > 0)) throw Error("threshold step must be positive");
  std::vector<double> values;
  for (std::size_t i = 0;; ++i) {
    double t = start + static_cast<double>(i) * step;
    if (t > stop + 1e-9) break;
    // Snap to the grid so 0.05 * 7 prints as 0.35.
    t = std::round(t * 1e9) / 1e9;
    values.push_back(std::min(t, 1.0));
  }
  return ThresholdSweep(std::move(values));
}

void WriteScoredMentions(std::ostream &out, std::span<const ScoredMention> scored) {
  for (const ScoredMention &s : scored) {
    const Mention &m = s.mention;
    // The score goes in verbatim so reloading gives back the same bits.
    json obj = {{"doc_id", m.doc_id},   {"concept_id", m.concept_id},
                {"start", m.start},     {"end", m.end},
                {"surface", m.surface}, {"filtered", m.filtered},
                {"filter_reason", nullptr}};
    if (m.filter_reason) obj["filter_reason"] = *m.filter_reason;
    std::string line = obj.dump();
    line.pop_back();
    out << line << ",\"score\":" << FormatDouble(s.score) << "}\n";
  }
}

std::vector<ScoredMention> ReadScoredMentions(std::istream &in,
                                              const std::string &source) {
  std::vector<ScoredMention> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      json obj = json::parse(line);
      ScoredMention s;
      Mention &m = s.mention;
      m.doc_id = obj.at("doc_id").get<std::string>();
      m.concept_id = obj.at("concept_id").get<std::string>();
      m.start = obj.at("start").get<std::size_t>();
      m.end = obj.at("end").get<std::size_t>();
      m.surface = obj.at("surface").get<std::string>();
      m.filtered = obj.at("filtered").get<bool>();
      if (auto r = obj.find("filter_reason"); r != obj.end() && !r->is_null()) {
        m.filter_reason = r->get<std::string>();
      }
      s.score = obj.at("score").get<double>();
      out.push_back(std::move(s));
    } catch (const json::exception &e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return out;
}

void WriteLabelsCsv(std::ostream &out, std::span<const ScoredMention> scored,
                    double tau) {
  out << "doc_id,start,end,concept_id,score,label\n";
  std::vector<LabeledMention> labels = LabelAtThreshold(scored, tau);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Mention &m = labels[i].mention;
    out << CsvField(m.doc_id) << ',' << m.start << ',' << m.end << ','
        << CsvField(m.concept_id) << ',' << FormatDouble(scored[i].score) << ','
        << (labels[i].label ? 1 : 0) << '\n';
  }
}

}  // namespace acenlp
