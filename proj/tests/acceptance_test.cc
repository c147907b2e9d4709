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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "acenlp/autoencoder.h"
#include "acenlp/config.h"
#include "acenlp/eval.h"
#include "acenlp/matrix.h"
#include "acenlp/ner.h"
#include "acenlp/pipeline.h"
#include "acenlp/random.h"
#include "acenlp/selflabel.h"
#include "test_util.h"

namespace acenlp {
namespace {

const std::filesystem::path kSample = ACENLP_SAMPLE_DIR;
const std::filesystem::path kTestData = ACENLP_TEST_DATA;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure message; later ones are counted.
class Checker {
 public:
  void Expect(bool ok, const std::string &what) {
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  Outcome Done(std::string detail) const {
    if (failures_ == 0) return {true, std::move(detail)};
    return {false, first_ + (failures_ > 1 ? " (+" + std::to_string(failures_ - 1) +
                                                 " more failures)"
                                           : "")};
  }

 private:
  int failures_ = 0;
  std::string first_;
};

std::string Sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string Num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// 1. F1 from the published precision/recall pair.
Outcome MetricConsistency() {
  Checker c;
  double worst = 0;
  // tp/(tp+fp) = 0.853 and tp/(tp+fn) = 0.707 exactly.
  for (std::int64_t scale : {1, 2, 7, 1000}) {
    ConfusionCounts counts{603071 * scale, 103929 * scale, 249929 * scale};
    Metrics m = ComputeMetrics(counts);
    c.Expect(std::abs(m.precision - 0.853) < 1e-12 && std::abs(m.recall - 0.707) < 1e-12,
             "counts do not give P=0.853, R=0.707");
    worst = std::max(worst, std::abs(m.f1 - 0.773));
  }
  c.Expect(worst <= 0.001, "F1 off by " + Num(worst, 6));
  Metrics m = ComputeMetrics({603071, 103929, 249929});
  return c.Done("F1=" + Num(m.f1, 6) + " for P=0.853 R=0.707");
}

// 2. Matrix builders against dense brute-force counting.
Outcome MatrixOracle() {
  Checker c;
  Rng rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.Below(20);
    std::size_t m = 1 + rng.Below(15);
    std::vector<Concept> concepts;
    for (std::size_t j = 0; j < m; ++j) {
      concepts.push_back({"K" + std::to_string(100 + j), "t" + std::to_string(j), {}, {}, "g"});
    }
    Lexicon lex = Lexicon::FromConcepts(concepts);
    std::vector<Document> docs;
    for (std::size_t i = 0; i < n; ++i) docs.push_back({"doc" + std::to_string(100 + i), "", {}});
    Corpus corpus = Corpus::FromDocuments(docs);

    std::vector<std::vector<std::int64_t>> dense(n, std::vector<std::int64_t>(m, 0));
    std::vector<Mention> mentions;
    std::size_t count = rng.Below(80);
    for (std::size_t k = 0; k < count; ++k) {
      std::size_t d = rng.Below(n), j = rng.Below(m);
      Mention mention;
      mention.doc_id = corpus[d].id;
      mention.concept_id = lex.concepts()[j].id;
      mention.filtered = rng.Bernoulli(0.15);
      if (!mention.filtered) ++dense[d][j];
      mentions.push_back(mention);
    }

    DocConceptMatrix x = BuildDocConceptMatrix(corpus, mentions, lex);
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < m; ++j) {
      bool seen = false;
      for (std::size_t d = 0; d < n; ++d) seen = seen || dense[d][j] > 0;
      if (seen) cols.push_back(j);
    }
    c.Expect(x.m_concepts() == cols.size(), "observed concept count differs");
    if (x.m_concepts() != cols.size()) continue;
    for (std::size_t d = 0; d < n; ++d) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        c.Expect(x.counts.At(d, j) == dense[d][cols[j]], "doc-concept count differs");
      }
    }

    CoocMatrix cooc = BuildCoocMatrix(x, 1 + static_cast<int>(rng.Below(4)));
    for (std::size_t a = 0; a < cols.size(); ++a) {
      std::int64_t df = 0;
      for (std::size_t d = 0; d < n; ++d) df += dense[d][cols[a]] > 0;
      c.Expect(cooc.counts.At(a, a) == df, "diagonal is not document frequency");
      for (std::size_t b = 0; b < cols.size(); ++b) {
        std::int64_t both = 0;
        for (std::size_t d = 0; d < n; ++d) {
          both += (dense[d][cols[a]] > 0 && dense[d][cols[b]] > 0) ? 1 : 0;
        }
        c.Expect(cooc.counts.At(a, b) == both, "co-occurrence count differs");
        c.Expect(cooc.counts.At(a, b) == cooc.counts.At(b, a), "co-occurrence not symmetric");
      }
    }
  }
  return c.Done("200 random corpora");
}

// 3. Cosine similarity against a direct evaluation of the formula.
Outcome CosineFidelity() {
  Checker c;
  Rng rng(99);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t dim = 1 + rng.Below(64);
    Vector a(dim), b(dim);
    for (auto &v : a) v = rng.Uniform(-10, 10);
    for (auto &v : b) v = rng.Uniform(-10, 10);
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      dot += a[i] * b[i];
      na += a[i] * a[i];
      nb += b[i] * b[i];
    }
    double direct = dot / (std::sqrt(na) * std::sqrt(nb));
    worst = std::max(worst, std::abs(CosineSimilarity(a, b) - direct));

    Vector neg = a;
    for (auto &v : neg) v = -v;
    c.Expect(CosineSimilarity(a, a) == 1.0, "identical vectors not exactly 1");
    c.Expect(CosineSimilarity(a, neg) == -1.0, "opposite vectors not exactly -1");
    // Disjoint supports are orthogonal.
    Vector left(dim + 1, 0.0), right(dim + 1, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) (i % 2 ? left : right)[i] = rng.Uniform(0.1, 5);
    c.Expect(CosineSimilarity(left, right) == 0.0, "orthogonal vectors not exactly 0");
  }
  c.Expect(worst <= 1e-12, "max deviation " + Sci(worst));
  c.Expect(CosineSimilarity(Vector{1, 0}, Vector{0, 1}) == 0.0, "(1,0).(0,1) != 0");
  return c.Done("1000 pairs, max deviation " + Sci(worst));
}

// 4. Backprop against central finite differences.
Outcome GradientCheck() {
  Checker c;
  Rng rng(4242);
  double worst = 0;
  int models = 0;
  for (auto act : {Activation::kIdentity, Activation::kSigmoid}) {
    for (auto [m, k] : {std::pair<std::size_t, std::size_t>{4, 2}, {6, 3}}) {
      for (int trial = 0; trial < 5; ++trial, ++models) {
        AEConfig config;
        config.input_dim = m;
        config.encoded_dim = k;
        config.activation = act;
        config.seed = rng.Next();
        AEModel model = InitModel(config);
        std::vector<double *> params;
        for (auto *vec : {&model.params.w_enc, &model.params.b_enc, &model.params.w_dec,
                          &model.params.b_dec}) {
          for (auto &v : *vec) {
            v = rng.Uniform(-1, 1);
            params.push_back(&v);
          }
        }
        std::vector<Vector> batch(4, Vector(m));
        for (auto &x : batch) {
          for (auto &v : x) v = rng.Uniform(-1, 1);
        }
        LossAndGradients lg = ComputeLossAndGradients(model, batch);
        std::vector<double> analytic;
        for (const auto *vec : {&lg.grads.w_enc, &lg.grads.b_enc, &lg.grads.w_dec, &lg.grads.b_dec}) {
          analytic.insert(analytic.end(), vec->begin(), vec->end());
        }
        for (std::size_t i = 0; i < params.size(); ++i) {
          const double h = 1e-5;
          double saved = *params[i];
          *params[i] = saved + h;
          double up = ReconstructionLoss(model, batch);
          *params[i] = saved - h;
          double down = ReconstructionLoss(model, batch);
          *params[i] = saved;
          double numeric = (up - down) / (2 * h);
          double rel = std::abs(analytic[i] - numeric) /
                       std::max({std::abs(analytic[i]), std::abs(numeric), 1e-7});
          worst = std::max(worst, rel);
        }
      }
    }
  }
  c.Expect(worst < 1e-4, "max relative error " + Sci(worst));
  return c.Done(std::to_string(models) + " models, max relative error " + Sci(worst));
}

// 5. A linear autoencoder recovers data from a k-dim subspace.
Outcome SubspaceFidelity() {
  Checker c;
  const std::size_t m = 40, k = 8, n = 40;
  Rng rng(5);
  std::vector<Vector> basis(k, Vector(m));
  for (auto &b : basis) {
    for (auto &v : b) v = rng.Gaussian() / std::sqrt(static_cast<double>(m));
  }
  std::vector<Vector> data(n, Vector(m, 0.0));
  for (auto &x : data) {
    for (std::size_t j = 0; j < k; ++j) {
      double coef = rng.Gaussian();
      for (std::size_t i = 0; i < m; ++i) x[i] += coef * basis[j][i];
    }
  }
  AEConfig config;
  config.input_dim = m;
  config.encoded_dim = k;
  config.learning_rate = 0.2;
  config.batch_size = 8;
  config.epochs = 2000;
  config.seed = 17;
  auto [model, report] = Train(InitModel(config), data, config);

  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, count = 0;
  for (const auto &x : data) {
    Vector r = Forward(model, x).reconstructed;
    for (std::size_t i = 0; i < m; ++i) {
      sx += x[i];
      sy += r[i];
      sxx += x[i] * x[i];
      syy += r[i] * r[i];
      sxy += x[i] * r[i];
      count += 1;
    }
  }
  double corr = (sxy - sx * sy / count) /
                std::sqrt((sxx - sx * sx / count) * (syy - sy * sy / count));
  c.Expect(report.final_loss < 1e-3, "MSE " + std::to_string(report.final_loss));
  c.Expect(corr > 0.99, "correlation " + std::to_string(corr));
  char detail[128];
  std::snprintf(detail, sizeof detail, "MSE %.3g, reconstruction correlation %.6f",
                report.final_loss, corr);
  return c.Done(detail);
}

// 6. PR-AUC with and without the autoencoder on the bundled corpus.
Outcome AucPreservation() {
  Checker c;
  testing::TempDir dir("accept-auc");
  PipelineConfig config = LoadConfig(kSample / "pipeline.ini");
  config.output_dir = dir.path();
    std::ostringstream log;
  RunSummary s = RunPipeline(config, Stage::kNer, Stage::kEval, log);
  AEModel model;
  {
    std::ifstream in(dir.path() / "model.json");
    model = LoadModel(in);
  }
  c.Expect(s.documents >= 200, "fewer than 200 documents");
  c.Expect(s.observed_concepts >= 30, "fewer than 30 observed concepts");
  c.Expect(model.encoded_dim == s.observed_concepts / 4, "encoded_dim is not m/4");
  if (!s.auc_raw || !s.auc_encoded) {
    c.Expect(false, "AUC undefined");
    return c.Done("");
  }
  double gap = std::abs(*s.auc_raw - *s.auc_encoded);
  c.Expect(gap <= 0.05, "gap " + Num(gap) + " > 0.05 (raw " + Num(*s.auc_raw) + ", encoded " +
                            Num(*s.auc_encoded) + ")");
  return c.Done(std::to_string(s.documents) + " docs, m=" + std::to_string(s.observed_concepts) +
                ", k=" + std::to_string(model.encoded_dim) + ", raw " + Num(*s.auc_raw) +
                ", encoded " + Num(*s.auc_encoded) + ", gap " + Num(gap));
}

// 7. Golden NER test on the forum post.
Outcome NerGolden() {
  Checker c;
  std::string marked = testing::ReadFile(kTestData / "forum_post.txt");
  std::string text;
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::size_t open = 0;
  bool in_bold = false;
  for (std::size_t i = 0; i < marked.size(); ++i) {
    if (marked.compare(i, 2, "**") == 0) {
      if (in_bold) spans.emplace_back(open, text.size());
      else open = text.size();
      in_bold = !in_bold;
      ++i;
      continue;
    }
    text += marked[i];
  }

  // Highlighted terms plus two shorter decoys nested inside the long one.
  std::vector<Concept> concepts = {
      {"T1", "mental disorder", {}, {}, "g"},
      {"T2", "mood swings", {}, {}, "g"},
      {"T3", "borderline personality disorder", {"BPD"}, {}, "g"},
      {"T4", "self harm", {}, {}, "g"},
      {"T5", "social phobia", {}, {}, "g"},
      {"T6", "destructive", {}, {}, "g"},
      {"T7", "sad", {}, {}, "g"},
      {"T8", "personality disorder", {}, {}, "g"},
      {"T9", "disorder", {}, {}, "g"}};
  Lexicon lex = Lexicon::FromConcepts(concepts);
  ConceptSet all;
  for (const auto &concept_def : concepts) all.insert(concept_def.id);
  std::vector<Mention> mentions =
      FindMentions(Document{"post", text, {}}, Vocabulary::Build(lex, all));

  c.Expect(spans.size() == 10, "expected 10 highlighted spans in the fixture");
  c.Expect(mentions.size() == spans.size(),
           "found " + std::to_string(mentions.size()) + " mentions, expected " +
               std::to_string(spans.size()));
  for (std::size_t i = 0; i < std::min(mentions.size(), spans.size()); ++i) {
    c.Expect(mentions[i].start == spans[i].first && mentions[i].end == spans[i].second,
             "mention '" + mentions[i].surface + "' at wrong offsets");
    c.Expect(!mentions[i].filtered, "highlighted mention filtered");
  }
  std::size_t long_form = 0;
  for (const auto &mention : mentions) {
    c.Expect(mention.concept_id != "T8" && mention.concept_id != "T9",
             "nested decoy '" + mention.surface + "' reported");
    if (mention.surface == "borderline personality disorder") ++long_form;
  }
  c.Expect(long_form == 1, "borderline personality disorder not reported exactly once");
  return c.Done(std::to_string(mentions.size()) + " highlighted spans at exact offsets");
}

// 8. Positive sets shrink and recall never rises with the threshold.
Outcome ThresholdMonotonicity() {
  Checker c;
  Rng rng(8080);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng.Below(60);
    std::string text(4 * n + 10, 'x');
    Corpus corpus = Corpus::FromDocuments({{"d", text, {}}});
    std::vector<ScoredMention> scored;
    std::vector<GoldAnnotation> gold;
    for (std::size_t i = 0; i < n; ++i) {
      Mention m;
      m.doc_id = "d";
      m.concept_id = "C" + std::to_string(rng.Below(4));
      m.start = 4 * i;
      m.end = 4 * i + 3;
      m.surface = "xxx";
      m.filtered = rng.Bernoulli(0.15);
      double score = rng.Bernoulli(0.1) ? std::round(rng.Uniform(-1, 1) * 20) / 20
                                        : rng.Uniform(-1, 1);
      scored.push_back({m, score});
      double u = rng.Uniform();
      if (u < 0.4) gold.push_back({"d", m.start, m.end, m.concept_id, GoldLabel::kNlpTrue});
      else if (u < 0.6) gold.push_back({"d", m.start, m.end, std::nullopt, GoldLabel::kNotAces});
    }
    // Missed spans.
    gold.push_back({"d", 4 * n, 4 * n + 3, std::nullopt, GoldLabel::kManualAces});
    GoldSet gs(gold, corpus);

    std::vector<double> taus;
    double t = -1;
    while (t <= 1) {
      taus.push_back(t);
      t += rng.Uniform(0.01, 0.3);
    }
    ThresholdSweep sweep(taus);
    std::vector<PRPoint> points = PrSweep(scored, gs, sweep);
    for (std::size_t i = 1; i < points.size(); ++i) {
      c.Expect(points[i].recall <= points[i - 1].recall, "recall increased with threshold");
    }
    std::set<std::size_t> prev;
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
      auto labels = LabelAtThreshold(scored, taus[ti]);
      std::set<std::size_t> cur;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].label) cur.insert(i);
        c.Expect(!(labels[i].label && labels[i].mention.filtered), "filtered mention positive");
      }
      if (ti > 0) {
        c.Expect(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()),
                 "positive set grew with threshold");
      }
      prev = std::move(cur);
    }
  }
  return c.Done("100 random score/gold configurations");
}

// 9. Byte-identical artifacts across repeated runs and thread counts.
Outcome EndToEndDeterminism() {
  Checker c;
  std::vector<std::map<std::string, std::string>> snapshots;
  for (int threads : {1, 1, 4}) {
    testing::TempDir dir("accept-det");
    PipelineConfig config = LoadConfig(kSample / "pipeline.ini");
    config.output_dir = dir.path();
    config.threads = threads;
    std::ostringstream log;
    RunPipeline(config, Stage::kNer, Stage::kEval, log);
    snapshots.push_back(testing::Snapshot(dir.path()));
  }
  c.Expect(!snapshots[0].empty(), "no artifacts written");
  c.Expect(snapshots[0] == snapshots[1], "repeated runs differ");
  c.Expect(snapshots[0] == snapshots[2], "1-thread and 4-thread runs differ");
  return c.Done(std::to_string(snapshots[0].size()) + " artifacts identical over 3 runs");
}

struct Criterion {
  int number;
  const char *title;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace acenlp

int main() {
  using namespace acenlp;
  const std::vector<Criterion> criteria = {
      {1, "metric consistency", 1, MetricConsistency},
      {2, "matrix oracle equivalence", 10, MatrixOracle},
      {3, "cosine similarity fidelity", 1, CosineFidelity},
      {4, "gradient correctness", 5, GradientCheck},
      {5, "autoencoder fidelity on representable data", 30, SubspaceFidelity},
      {6, "PR-AUC preserved by the autoencoder", 120, AucPreservation},
      {7, "NER golden passage", 1, NerGolden},
      {8, "threshold monotonicity", 5, ThresholdMonotonicity},
      {9, "end-to-end determinism", 360, EndToEndDeterminism},
  };
  int failed = 0;
  for (const Criterion &c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.pass && secs > c.budget_seconds) {
      outcome = {false, "took " + std::to_string(secs) + " s, budget " +
                            std::to_string(c.budget_seconds) + " s"};
    }
    std::printf("criterion %d: %s  %s (%.2fs): %s\n", c.number, outcome.pass ? "PASS" : "FAIL",
                c.title, secs, outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
