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

#ifndef ACENLP_SELFLABEL_H_
#define ACENLP_SELFLABEL_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "acenlp/matrix.h"
#include "acenlp/ner.h"

namespace acenlp {

struct ScoredMention {
  Mention mention;
  double score = 0;

  bool operator==(const ScoredMention &) const = default;
};

struct LabeledMention {
  Mention mention;
  bool label = false;
};

// Scores each mention by the cosine between its concept's embedding and the
// leave-one-out context of its document (see DocumentContextVector).
// `embeddings` is indexed like the columns of `x` and may live in either the
// raw m-dim space or an encoded space. A filtered mention whose concept has
// no column scores 0; an unfiltered one throws ValidationError naming the
// concept.
std::vector<ScoredMention> ScoreMentions(std::span<const Mention> mentions,
                                         const DocConceptMatrix &x,
                                         std::span<const Vector> embeddings);

// label = score >= tau and not filtered. Throws Error when tau is outside
// [-1, 1].
std::vector<LabeledMention> LabelAtThreshold(std::span<const ScoredMention> scored,
                                             double tau);

// Labels every unfiltered mention positive; the unthresholded system.
std::vector<LabeledMention> LabelUnfiltered(std::span<const Mention> mentions);

// Strictly increasing thresholds within [-1, 1].
class ThresholdSweep {
 public:
  // Throws Error when the list is empty, unsorted or out of range.
  explicit ThresholdSweep(std::vector<double> thresholds);

  // 0.00, 0.05, ..., 1.00.
  static ThresholdSweep Default();
  // start, start + step, ... up to stop (inclusive within 1e-9).
  static ThresholdSweep Range(double start, double stop, double step);

  const std::vector<double> &thresholds() const { return thresholds_; }

 private:
  std::vector<double> thresholds_;
};

// Scored-mentions JSONL: the mention fields plus `score`.
void WriteScoredMentions(std::ostream &out, std::span<const ScoredMention> scored);
std::vector<ScoredMention> ReadScoredMentions(std::istream &in,
                                              const std::string &source = "<scored>");

// Labels CSV: doc_id,start,end,concept_id,score,label
void WriteLabelsCsv(std::ostream &out, std::span<const ScoredMention> scored,
                    double tau);

}  // namespace acenlp

#endif  // ACENLP_SELFLABEL_H_
