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

#include "acenlp/eval.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <tuple>

#include "acenlp/errors.h"
#include "acenlp/text.h"
#include "json.hpp"

namespace acenlp {

using json = nlohmann::json;

namespace {

using Span = std::tuple<std::string, std::size_t, std::size_t>;

Span SpanOf(const GoldAnnotation &g) { return {g.doc_id, g.start, g.end}; }
Span SpanOf(const Mention &m) { return {m.doc_id, m.start, m.end}; }

// Positive spans and the concepts predicted on each, ordered.
std::map<Span, std::set<ConceptId>> PositiveSpans(
    std::span<const LabeledMention> predicted) {
  std::map<Span, std::set<ConceptId>> spans;
  for (const LabeledMention &l : predicted) {
    if (l.label) spans[SpanOf(l.mention)].insert(l.mention.concept_id);
  }
  return spans;
}

std::map<Span, const GoldAnnotation *> TrueSpans(const GoldSet &gold) {
  std::map<Span, const GoldAnnotation *> spans;
  for (const GoldAnnotation &g : gold.annotations()) {
    if (g.is_true()) spans.emplace(SpanOf(g), &g);
  }
  return spans;
}

double Ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::string_view GoldLabelName(GoldLabel label) {
  switch (label) {
    case GoldLabel::kNlpTrue:
      return "NLP_TRUE";
    case GoldLabel::kNotAces:
      return "Not_ACEs";
    case GoldLabel::kManualAces:
      return "Manual_ACEs";
  }
  return "?";
}

GoldLabel ParseGoldLabel(std::string_view name) {
  if (name == "NLP_TRUE") return GoldLabel::kNlpTrue;
  if (name == "Not_ACEs") return GoldLabel::kNotAces;
  if (name == "Manual_ACEs") return GoldLabel::kManualAces;
  throw Error("unknown gold label '" + std::string(name) + "'");
}

std::vector<GoldAnnotation> ParseGold(std::istream &in, const std::string &source) {
  std::vector<GoldAnnotation> gold;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      json obj = json::parse(line);
      GoldAnnotation g;
      g.doc_id = obj.at("doc_id").get<std::string>();
      g.start = obj.at("start").get<std::size_t>();
      g.end = obj.at("end").get<std::size_t>();
      if (auto c = obj.find("concept_id"); c != obj.end() && !c->is_null()) {
        g.concept_id = c->get<std::string>();
      }
      g.label = ParseGoldLabel(obj.at("label").get<std::string>());
      gold.push_back(std::move(g));
    } catch (const json::exception &e) {
      throw ParseError(source, line_no, e.what());
    } catch (const Error &e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return gold;
}

std::vector<GoldAnnotation> LoadGold(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gold file " + path);
  return ParseGold(in, path);
}

void WriteGold(std::ostream &out, std::span<const GoldAnnotation> gold) {
  for (const GoldAnnotation &g : gold) {
    json obj = {{"doc_id", g.doc_id}, {"start", g.start}, {"end", g.end}};
    if (g.concept_id) obj["concept_id"] = *g.concept_id;
    obj["label"] = GoldLabelName(g.label);
    out << obj.dump() << '\n';
  }
}

GoldSet::GoldSet(std::vector<GoldAnnotation> annotations, const Corpus &corpus) {
  for (const GoldAnnotation &g : annotations) {
    std::size_t d = corpus.IndexOf(g.doc_id);
    if (d == Corpus::npos) {
      throw ValidationError("gold annotation for unknown document '" + g.doc_id + "'");
    }
    if (g.start >= g.end || g.end > corpus[d].text.size()) {
      throw ValidationError("gold span [" + std::to_string(g.start) + ", " +
                            std::to_string(g.end) + ") out of bounds in document '" +
                            g.doc_id + "'");
    }
  }
  std::sort(annotations.begin(), annotations.end(),
            [](const GoldAnnotation &a, const GoldAnnotation &b) {
              return SpanOf(a) < SpanOf(b);
            });
  for (GoldAnnotation &g : annotations) {
    if (!annotations_.empty() && SpanOf(annotations_.back()) == SpanOf(g)) {
      if (annotations_.back() == g) continue;
      throw ValidationError("conflicting gold annotations for span [" +
                            std::to_string(g.start) + ", " + std::to_string(g.end) +
                            ") in document '" + g.doc_id + "'");
    }
    annotations_.push_back(std::move(g));
  }
}

std::size_t GoldSet::num_true() const {
  return static_cast<std::size_t>(std::count_if(
      annotations_.begin(), annotations_.end(),
      [](const GoldAnnotation &g) { return g.is_true(); }));
}

ConfusionCounts MatchToGold(std::span<const LabeledMention> predicted,
                            const GoldSet &gold) {
  auto positives = PositiveSpans(predicted);
  auto truths = TrueSpans(gold);
  ConfusionCounts counts;
  for (const auto &[span, concepts] : positives) {
    if (truths.count(span)) {
      ++counts.tp;
    } else {
      ++counts.fp;
    }
  }
  for (const auto &[span, g] : truths) {
    if (!positives.count(span)) ++counts.fn;
  }
  return counts;
}

Metrics ComputeMetrics(const ConfusionCounts &counts) {
  Metrics m;
  m.precision = Ratio(counts.tp, counts.tp + counts.fp);
  m.recall = Ratio(counts.tp, counts.tp + counts.fn);
  m.f1 = m.precision + m.recall == 0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

std::map<std::string, ConceptMetrics> PerConceptMetrics(
    std::span<const LabeledMention> predicted, const GoldSet &gold,
    const Lexicon &lexicon) {
  auto positives = PositiveSpans(predicted);
  auto truths = TrueSpans(gold);
  std::map<std::string, ConceptMetrics> table;
  for (const auto &[span, concepts] : positives) {
    auto t = truths.find(span);
    if (t != truths.end()) {
      const GoldAnnotation &g = *t->second;
      ConceptMetrics &row = table[g.concept_id ? *g.concept_id : *concepts.begin()];
      ++row.counts.tp;
    } else {
      ++table[*concepts.begin()].counts.fp;
    }
  }
  for (const auto &[span, g] : truths) {
    if (positives.count(span)) continue;
    ++table[g->concept_id ? *g->concept_id : std::string(kUnmappedConcept)].counts.fn;
  }
  for (auto &[key, row] : table) {
    row.name = lexicon.Contains(key) ? lexicon.at(key).preferred_name : key;
    row.metrics = ComputeMetrics(row.counts);
    row.support = row.counts.tp + row.counts.fn;
  }
  return table;
}

std::vector<ConceptTableRow> TopConceptTable(
    const std::map<std::string, ConceptMetrics> &per_concept, std::size_t top) {
  std::vector<const std::pair<const std::string, ConceptMetrics> *> order;
  for (const auto &entry : per_concept) order.push_back(&entry);
  std::stable_sort(order.begin(), order.end(), [](const auto *a, const auto *b) {
    return a->second.support > b->second.support;
  });
  std::vector<ConceptTableRow> rows;
  for (std::size_t i = 0; i < order.size() && i < top; ++i) {
    const auto &[key, cm] = *order[i];
    rows.push_back({key, cm.name, cm.metrics, cm.support});
  }
  if (order.size() > top) {
    ConceptTableRow others{"others", "all others", {}, 0};
    const double count = static_cast<double>(order.size() - top);
    for (std::size_t i = top; i < order.size(); ++i) {
      const ConceptMetrics &cm = order[i]->second;
      others.metrics.precision += cm.metrics.precision / count;
      others.metrics.recall += cm.metrics.recall / count;
      others.metrics.f1 += cm.metrics.f1 / count;
      others.support += cm.support;
    }
    rows.push_back(others);
  }
  return rows;
}

std::vector<PRPoint> PrSweep(std::span<const ScoredMention> scored,
                             const GoldSet &gold, const ThresholdSweep &sweep) {
  std::vector<PRPoint> points;
  points.reserve(sweep.thresholds().size());
  for (double tau : sweep.thresholds()) {
    Metrics m = ComputeMetrics(MatchToGold(LabelAtThreshold(scored, tau), gold));
    points.push_back({tau, m.precision, m.recall});
  }
  return points;
}

double PrAuc(std::span<const PRPoint> points) {
  if (points.size() < 2) throw Error("PR-AUC needs at least two points");
  std::vector<std::pair<double, double>> sorted;  // (recall, precision)
  for (const PRPoint &p : points) sorted.emplace_back(p.recall, p.precision);
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> curve;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    double sum = 0;
    while (j < sorted.size() && sorted[j].first == sorted[i].first) sum += sorted[j++].second;
    curve.emplace_back(sorted[i].first, sum / static_cast<double>(j - i));
    i = j;
  }
  double area = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    area += (curve[i].first - curve[i - 1].first) *
            (curve[i].second + curve[i - 1].second) / 2.0;
  }
  return area;
}

void WritePrCurve(std::ostream &out, std::span<const PRPoint> points) {
  out << "threshold,precision,recall\n";
  for (const PRPoint &p : points) {
    out << FormatDouble(p.threshold) << ',' << FormatDouble(p.precision) << ','
        << FormatDouble(p.recall) << '\n';
  }
}

std::vector<PRPoint> ReadPrCurve(std::istream &in, const std::string &source) {
  std::vector<PRPoint> points;
  std::vector<std::string> fields;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty() || line_no == 1) continue;
    if (!SplitCsvRecord(line, fields) || fields.size() != 3) {
      throw ParseError(source, line_no, "expected threshold,precision,recall");
    }
    try {
      points.push_back({std::stod(fields[0]), std::stod(fields[1]), std::stod(fields[2])});
    } catch (const std::exception &) {
      throw ParseError(source, line_no, "bad number");
    }
  }
  return points;
}

}  // namespace acenlp
