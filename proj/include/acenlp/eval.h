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

#ifndef ACENLP_EVAL_H_
#define ACENLP_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acenlp/corpus.h"
#include "acenlp/lexicon.h"
#include "acenlp/selflabel.h"

namespace acenlp {

// Gold categories. kNlpTrue: span found by the system and correct.
// kNotAces: span found by the system but wrong. kManualAces: correct span
// the system missed.
enum class GoldLabel { kNlpTrue, kNotAces, kManualAces };

std::string_view GoldLabelName(GoldLabel label);
// Accepts "NLP_TRUE", "Not_ACEs", "Manual_ACEs". Throws Error otherwise.
GoldLabel ParseGoldLabel(std::string_view name);

struct GoldAnnotation {
  std::string doc_id;
  std::size_t start = 0;
  std::size_t end = 0;
  std::optional<ConceptId> concept_id;
  GoldLabel label = GoldLabel::kNlpTrue;

  bool is_true() const { return label != GoldLabel::kNotAces; }
  bool operator==(const GoldAnnotation &) const = default;
};

// Gold JSONL: {doc_id, start, end, concept_id?, label}.
std::vector<GoldAnnotation> ParseGold(std::istream &in,
                                      const std::string &source = "<gold>");
std::vector<GoldAnnotation> LoadGold(const std::string &path);
void WriteGold(std::ostream &out, std::span<const GoldAnnotation> gold);

// Gold annotations validated against a corpus, one annotation per span.
class GoldSet {
 public:
  GoldSet() = default;

  // Throws ValidationError for an unknown document, offsets outside the
  // document text, or two different annotations of the same span. Exact
  // duplicates collapse.
  GoldSet(std::vector<GoldAnnotation> annotations, const Corpus &corpus);

  // Sorted by (doc_id, start, end).
  const std::vector<GoldAnnotation> &annotations() const { return annotations_; }
  std::size_t num_true() const;
  bool empty() const { return annotations_.empty(); }

 private:
  std::vector<GoldAnnotation> annotations_;
};

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  ConfusionCounts &operator+=(const ConfusionCounts &o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const ConfusionCounts &) const = default;
};

// Exact (doc_id, start, end) matching. Positive predictions are collapsed to
// their spans first, so a span carried by two concepts counts once. A
// positive span is a TP when a true (NLP_TRUE or Manual_ACEs) annotation has
// that span, otherwise an FP (this includes Not_ACEs spans). True
// annotations without a positive prediction are FNs.
ConfusionCounts MatchToGold(std::span<const LabeledMention> predicted,
                            const GoldSet &gold);

struct Metrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Ratios with a zero denominator are 0.
Metrics ComputeMetrics(const ConfusionCounts &counts);

inline constexpr char kUnmappedConcept[] = "unmapped";

struct ConceptMetrics {
  std::string name;
  ConfusionCounts counts;
  Metrics metrics;
  // Number of true gold annotations attributed to the concept.
  std::int64_t support = 0;
};

// The span-level confusion events of MatchToGold partitioned by concept, so
// per-concept counts sum to the global ones. TPs and FNs go to the gold
// concept when annotated; otherwise a TP goes to the lowest predicted
// concept id on the span and an FN to kUnmappedConcept. FPs go to the lowest
// predicted concept id on the span.
std::map<std::string, ConceptMetrics> PerConceptMetrics(
    std::span<const LabeledMention> predicted, const GoldSet &gold,
    const Lexicon &lexicon);

struct ConceptTableRow {
  std::string key;
  std::string name;
  Metrics metrics;
  std::int64_t support = 0;
};

// The `top` concepts by support (ties by id), then one "all others" row with
// the macro-averaged metrics and summed support of the remaining concepts.
std::vector<ConceptTableRow> TopConceptTable(
    const std::map<std::string, ConceptMetrics> &per_concept, std::size_t top = 5);

struct PRPoint {
  double threshold = 0;
  double precision = 0;
  double recall = 0;
};

// One point per threshold, in sweep order.
std::vector<PRPoint> PrSweep(std::span<const ScoredMention> scored,
                             const GoldSet &gold, const ThresholdSweep &sweep);

// Trapezoidal area under precision over recall. Points are sorted by recall;
// points sharing a recall value are replaced by their mean precision.
// Throws Error with fewer than two points.
double PrAuc(std::span<const PRPoint> points);

// CSV with header threshold,precision,recall.
void WritePrCurve(std::ostream &out, std::span<const PRPoint> points);
std::vector<PRPoint> ReadPrCurve(std::istream &in, const std::string &source = "<pr>");

}  // namespace acenlp

#endif  // ACENLP_EVAL_H_
