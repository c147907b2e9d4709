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

#include "acenlp/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "acenlp/autoencoder.h"
#include "acenlp/corpus.h"
#include "acenlp/eval.h"
#include "acenlp/matrix.h"
#include "acenlp/ner.h"
#include "acenlp/selflabel.h"
#include "acenlp/text.h"
#include "json.hpp"

namespace acenlp {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char *kStageNames[] = {"ner", "matrix", "autoencoder", "score", "eval"};

void WriteArtifact(const fs::path &path, const std::function<void(std::ostream &)> &body) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  body(out);
  if (!out) throw Error("failed writing " + path.string());
}

// Opens an artifact produced by `producer`, or explains which stage to run.
std::ifstream OpenArtifact(const fs::path &path, Stage producer) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw StageError(producer, "missing artifact " + path.string() + "; run the " +
                                   std::string(StageName(producer)) + " stage first");
  }
  return in;
}

std::string Percent(double value) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * value);
  return buf;
}

std::string Fixed(double value, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

json MetricsJson(const ConfusionCounts &c, const Metrics &m) {
  return {{"tp", c.tp},
          {"fp", c.fp},
          {"fn", c.fn},
          {"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1}};
}

// Runs `fn`, rethrowing library errors as failures of `stage`.
template <typename Fn>
auto InStage(Stage stage, Fn &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError &) {
    throw;
  } catch (const ConfigError &) {
    throw;
  } catch (const std::exception &e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

std::string_view StageName(Stage stage) { return kStageNames[static_cast<int>(stage)]; }

Stage ParseStage(std::string_view name) {
  for (int i = 0; i < 5; ++i) {
    if (name == kStageNames[i]) return static_cast<Stage>(i);
  }
  throw ConfigError("unknown stage '" + std::string(name) +
                    "' (expected ner, matrix, autoencoder, score or eval)");
}

ConceptSelection SelectConcepts(const PipelineConfig &config) {
  RequireInput(config.lexicon_path, "lexicon");
  ConceptSelection sel;
  sel.lexicon = LoadLexicon(config.lexicon_path.string());
  sel.leaves = ExtractLeafConcepts(sel.lexicon);
  if (config.leaf_groups.empty() && config.descendant_roots.empty()) {
    for (const Concept &c : sel.lexicon.concepts()) sel.selected.insert(c.id);
    return sel;
  }
  for (const ConceptId &id : sel.leaves) {
    const std::string &group = sel.lexicon.at(id).group;
    if (std::find(config.leaf_groups.begin(), config.leaf_groups.end(), group) !=
        config.leaf_groups.end()) {
      sel.selected.insert(id);
    }
  }
  ConceptSet roots(config.descendant_roots.begin(), config.descendant_roots.end());
  ConceptSet expanded = ExpandDescendants(sel.lexicon, roots);
  sel.selected.insert(expanded.begin(), expanded.end());
  return sel;
}

void RunLexiconCommand(const PipelineConfig &config, std::ostream &out) {
  ConceptSelection sel = SelectConcepts(config);
  Vocabulary vocab = Vocabulary::Build(sel.lexicon, sel.selected);
  std::size_t leaf_selected = 0;
  for (const ConceptId &id : sel.selected) leaf_selected += sel.leaves.count(id);

  out << "concepts:            " << sel.lexicon.size() << '\n'
      << "indexed terms:       " << sel.lexicon.term_index().size() << '\n'
      << "leaf concepts:       " << sel.leaves.size() << '\n'
      << "selected concepts:   " << sel.selected.size() << " (" << leaf_selected
      << " leaves)\n"
      << "vocabulary patterns: " << vocab.num_patterns() << '\n';

  fs::path path = config.output_dir / "selected_concepts.tsv";
  WriteArtifact(path, [&](std::ostream &f) {
    f << "concept_id\tpreferred_name\tgroup\tleaf\tterms\n";
    for (const ConceptId &id : sel.selected) {
      const Concept &c = sel.lexicon.at(id);
      f << c.id << '\t' << c.preferred_name << '\t' << c.group << '\t'
        << (sel.leaves.count(id) ? "yes" : "no") << '\t' << 1 + c.synonyms.size() << '\n';
    }
  });
  out << "wrote " << path.string() << '\n';
}

RunSummary RunPipeline(const PipelineConfig &config, Stage from, Stage to,
                       std::ostream &log) {
  if (from > to) throw ConfigError("--from-stage comes after --to-stage");
  RequireInput(config.corpus_path, "corpus");
  if (to == Stage::kEval) RequireInput(config.gold_path, "gold");
  const fs::path &dir = config.output_dir;
  fs::create_directories(dir);

  RunSummary summary;
  ConceptSelection sel = InStage(Stage::kNer, [&] { return SelectConcepts(config); });
  Corpus corpus = InStage(Stage::kNer, [&] { return LoadCorpus(config.corpus_path.string()); });
  summary.documents = corpus.size();
  log << "corpus: " << corpus.size() << " documents\n";

  // ner
  std::vector<Mention> mentions;
  if (from <= Stage::kNer) {
    mentions = InStage(Stage::kNer, [&] {
      Vocabulary vocab = Vocabulary::Build(sel.lexicon, sel.selected);
      return AnnotateCorpus(corpus, vocab, config.filter_rules, config.threads);
    });
    WriteArtifact(dir / "mentions.jsonl", [&](std::ostream &out) { WriteMentions(out, mentions); });
  } else {
    auto in = OpenArtifact(dir / "mentions.jsonl", Stage::kNer);
    mentions = InStage(Stage::kNer, [&] { return ReadMentions(in, (dir / "mentions.jsonl").string()); });
  }
  summary.mentions = mentions.size();
  log << "ner: " << mentions.size() << " mentions ("
      << std::count_if(mentions.begin(), mentions.end(), [](const Mention &m) { return m.filtered; })
      << " filtered)\n";
  if (to == Stage::kNer) return summary;

  // matrix
  DocConceptMatrix x;
  CoocMatrix cooc;
  if (from <= Stage::kMatrix) {
    InStage(Stage::kMatrix, [&] {
      x = BuildDocConceptMatrix(corpus, mentions, sel.lexicon);
      cooc = BuildCoocMatrix(x, config.threads);
    });
    WriteArtifact(dir / "docs.txt", [&](std::ostream &out) { WriteIdList(out, x.doc_ids); });
    WriteArtifact(dir / "concepts.txt", [&](std::ostream &out) { WriteIdList(out, x.concept_ids); });
    WriteArtifact(dir / "doc_concept.mtx", [&](std::ostream &out) { WriteSparseMatrix(out, x.counts); });
    WriteArtifact(dir / "cooc.mtx", [&](std::ostream &out) { WriteSparseMatrix(out, cooc.counts); });
  } else {
    InStage(Stage::kMatrix, [&] {
      auto docs = OpenArtifact(dir / "docs.txt", Stage::kMatrix);
      auto concepts = OpenArtifact(dir / "concepts.txt", Stage::kMatrix);
      auto xm = OpenArtifact(dir / "doc_concept.mtx", Stage::kMatrix);
      auto cm = OpenArtifact(dir / "cooc.mtx", Stage::kMatrix);
      x.doc_ids = ReadIdList(docs);
      x.concept_ids = ReadIdList(concepts);
      x.counts = ReadSparseMatrix(xm, (dir / "doc_concept.mtx").string());
      cooc.concept_ids = x.concept_ids;
      cooc.counts = ReadSparseMatrix(cm, (dir / "cooc.mtx").string());
      if (x.counts.rows() != x.n_docs() || x.counts.cols() != x.m_concepts() ||
          cooc.counts.rows() != x.m_concepts()) {
        throw Error("cached matrices do not match their id lists");
      }
    });
  }
  summary.observed_concepts = x.m_concepts();
  log << "matrix: " << x.n_docs() << " x " << x.m_concepts() << " (" << x.counts.nnz()
      << " nonzero), co-occurrence nnz " << cooc.counts.nnz() << '\n';
  if (to == Stage::kMatrix) return summary;

  // autoencoder
  std::vector<Vector> raw;
  for (std::size_t i = 0; i < cooc.m_concepts(); ++i) {
    raw.push_back(ConceptEmbedding(cooc, i, config.normalized));
  }
  AEModel model;
  if (from <= Stage::kAutoencoder) {
    TrainReport report;
    InStage(Stage::kAutoencoder, [&] {
      AEConfig ae = config.autoencoder;
      ae.input_dim = cooc.m_concepts();
      if (ae.encoded_dim == 0) ae.encoded_dim = std::max<std::size_t>(1, ae.input_dim / 4);
      ae.seed = config.seed;
      if (ae.input_dim < 2) throw Error("need at least two observed concepts to compress");
      std::tie(model, report) = Train(InitModel(ae), raw, ae);
    });
    WriteArtifact(dir / "model.json", [&](std::ostream &out) { SaveModel(out, model); });
    WriteArtifact(dir / "train_loss.csv", [&](std::ostream &out) {
      out << "epoch,loss\n";
      for (std::size_t e = 0; e < report.loss_per_epoch.size(); ++e) {
        out << e + 1 << ',' << FormatDouble(report.loss_per_epoch[e]) << '\n';
      }
    });
    log << "autoencoder: " << model.input_dim << " -> " << model.encoded_dim
        << ", final loss " << FormatDouble(report.final_loss) << '\n';
  } else {
    auto in = OpenArtifact(dir / "model.json", Stage::kAutoencoder);
    model = InStage(Stage::kAutoencoder, [&] { return LoadModel(in, (dir / "model.json").string()); });
  }
  std::vector<Vector> encoded =
      InStage(Stage::kAutoencoder, [&] { return EncodeAll(model, cooc, config.normalized); });
  if (from <= Stage::kAutoencoder) {
    WriteArtifact(dir / "embeddings_encoded.tsv", [&](std::ostream &out) {
      for (std::size_t i = 0; i < encoded.size(); ++i) {
        out << cooc.concept_ids[i];
        for (double v : encoded[i]) out << '\t' << FormatDouble(v);
        out << '\n';
      }
    });
  }
  if (to == Stage::kAutoencoder) return summary;

  // score
  std::vector<ScoredMention> scored_raw, scored_encoded;
  if (from <= Stage::kScore) {
    InStage(Stage::kScore, [&] {
      scored_raw = ScoreMentions(mentions, x, raw);
      scored_encoded = ScoreMentions(mentions, x, encoded);
    });
    WriteArtifact(dir / "scored_raw.jsonl", [&](std::ostream &out) { WriteScoredMentions(out, scored_raw); });
    WriteArtifact(dir / "scored_encoded.jsonl",
                  [&](std::ostream &out) { WriteScoredMentions(out, scored_encoded); });
  } else {
    InStage(Stage::kScore, [&] {
      auto r = OpenArtifact(dir / "scored_raw.jsonl", Stage::kScore);
      auto e = OpenArtifact(dir / "scored_encoded.jsonl", Stage::kScore);
      scored_raw = ReadScoredMentions(r, (dir / "scored_raw.jsonl").string());
      scored_encoded = ReadScoredMentions(e, (dir / "scored_encoded.jsonl").string());
    });
  }
  log << "score: " << scored_raw.size() << " mentions scored in raw and encoded space\n";
  if (to == Stage::kScore) return summary;

  // eval
  InStage(Stage::kEval, [&] {
    GoldSet gold(LoadGold(config.gold_path.string()), corpus);
    std::vector<LabeledMention> baseline = LabelUnfiltered(mentions);
    ConfusionCounts counts = MatchToGold(baseline, gold);
    auto per_concept = PerConceptMetrics(baseline, gold, sel.lexicon);

    json report;
    report["documents"] = corpus.size();
    report["mentions"] = mentions.size();
    report["filtered_mentions"] =
        std::count_if(mentions.begin(), mentions.end(), [](const Mention &m) { return m.filtered; });
    report["selected_concepts"] = sel.selected.size();
    report["observed_concepts"] = x.m_concepts();
    report["encoded_dim"] = model.encoded_dim;
    report["gold"] = {{"annotations", gold.annotations().size()}, {"true", gold.num_true()}};
    report["baseline"] = MetricsJson(counts, ComputeMetrics(counts));
    json concepts = json::array();
    for (const auto &[key, cm] : per_concept) {
      json row = MetricsJson(cm.counts, cm.metrics);
      row["concept_id"] = key;
      row["name"] = cm.name;
      row["support"] = cm.support;
      concepts.push_back(std::move(row));
    }
    report["per_concept"] = std::move(concepts);
    json table = json::array();
    for (const ConceptTableRow &row : TopConceptTable(per_concept, 5)) {
      table.push_back({{"concept_id", row.key},
                       {"name", row.name},
                       {"precision", row.metrics.precision},
                       {"recall", row.metrics.recall},
                       {"f1", row.metrics.f1},
                       {"support", row.support}});
    }
    report["concept_table"] = std::move(table);

    json auc = json::object();
    for (const auto &[space, scored] :
         {std::pair<std::string, const std::vector<ScoredMention> *>{"raw", &scored_raw},
          {"encoded", &scored_encoded}}) {
      for (double tau : config.sweep.thresholds()) {
        WriteArtifact(dir / "labels" / (space + "_" + FormatDouble(tau) + ".csv"),
                      [&](std::ostream &out) { WriteLabelsCsv(out, *scored, tau); });
      }
      std::vector<PRPoint> points = PrSweep(*scored, gold, config.sweep);
      WriteArtifact(dir / ("pr_" + space + ".csv"), [&](std::ostream &out) { WritePrCurve(out, points); });
      if (points.size() >= 2) {
        auc[space] = PrAuc(points);
      } else {
        auc[space] = nullptr;
      }
    }
    if (auc["raw"].is_number() && auc["encoded"].is_number()) {
      summary.auc_raw = auc["raw"].get<double>();
      summary.auc_encoded = auc["encoded"].get<double>();
      auc["gap"] = std::abs(*summary.auc_raw - *summary.auc_encoded);
    } else {
      auc["gap"] = nullptr;
    }
    report["pr_auc"] = auc;
    WriteArtifact(dir / "metrics.json", [&](std::ostream &out) { out << report.dump(2) << '\n'; });
    WriteArtifact(dir / "auc.txt", [&](std::ostream &out) {
      if (summary.auc_raw) {
        out << "pr_auc raw=" << Fixed(*summary.auc_raw) << " encoded=" << Fixed(*summary.auc_encoded)
            << " gap=" << Fixed(std::abs(*summary.auc_raw - *summary.auc_encoded)) << '\n';
      } else {
        out << "pr_auc undefined (sweep has fewer than two thresholds)\n";
      }
    });
    log << "eval: baseline P=" << Percent(ComputeMetrics(counts).precision)
        << " R=" << Percent(ComputeMetrics(counts).recall)
        << " F1=" << Percent(ComputeMetrics(counts).f1) << '\n';
  });
  return summary;
}

void RenderReport(const PipelineConfig &config, std::ostream &out) {
  const fs::path &dir = config.output_dir;
  json metrics;
  std::vector<PRPoint> raw, encoded;
  {
    auto in = OpenArtifact(dir / "metrics.json", Stage::kEval);
    metrics = InStage(Stage::kEval, [&] { return json::parse(in); });
    auto r = OpenArtifact(dir / "pr_raw.csv", Stage::kEval);
    auto e = OpenArtifact(dir / "pr_encoded.csv", Stage::kEval);
    raw = InStage(Stage::kEval, [&] { return ReadPrCurve(r, (dir / "pr_raw.csv").string()); });
    encoded = InStage(Stage::kEval, [&] { return ReadPrCurve(e, (dir / "pr_encoded.csv").string()); });
  }

  std::ostringstream text;
  const json &base = metrics.at("baseline");
  if (metrics.at("gold").at("annotations").get<std::size_t>() == 0) {
    text << "warning: gold file has no annotations; all metrics are zero\n\n";
  }
  text << "Corpus\n"
       << "  documents           " << metrics.at("documents") << '\n'
       << "  mentions            " << metrics.at("mentions") << " ("
       << metrics.at("filtered_mentions") << " filtered)\n"
       << "  concepts observed   " << metrics.at("observed_concepts") << " of "
       << metrics.at("selected_concepts") << " selected\n"
       << "  gold annotations    " << metrics.at("gold").at("annotations") << " ("
       << metrics.at("gold").at("true") << " true)\n\n";
  text << "Baseline NER (every unfiltered mention)\n"
       << "  precision " << Percent(base.at("precision")) << "  recall "
       << Percent(base.at("recall")) << "  F1 " << Percent(base.at("f1")) << "  (tp "
       << base.at("tp") << ", fp " << base.at("fp") << ", fn " << base.at("fn") << ")\n\n";

  text << "Per-concept performance (top 5 by support)\n";
  char line[256];
  std::snprintf(line, sizeof line, "  %-12s %-34s %6s %6s %6s %8s\n", "concept", "name", "P",
                "R", "F1", "support");
  text << line;
  for (const json &row : metrics.at("concept_table")) {
    std::snprintf(line, sizeof line, "  %-12s %-34.34s %6s %6s %6s %8lld\n",
                  row.at("concept_id").get<std::string>().c_str(),
                  row.at("name").get<std::string>().c_str(),
                  Percent(row.at("precision")).c_str(), Percent(row.at("recall")).c_str(),
                  Percent(row.at("f1")).c_str(),
                  static_cast<long long>(row.at("support").get<std::int64_t>()));
    text << line;
  }

  auto curve = [&](const char *title, const std::vector<PRPoint> &points) {
    text << '\n' << title << "\n  threshold  precision  recall\n";
    for (const PRPoint &p : points) {
      std::snprintf(line, sizeof line, "  %9.2f  %9s  %6s\n", p.threshold,
                    Percent(p.precision).c_str(), Percent(p.recall).c_str());
      text << line;
    }
  };
  curve("PR curve, raw co-occurrence embeddings", raw);
  curve(("PR curve, encoded embeddings (dim " + metrics.at("encoded_dim").dump() + ")").c_str(),
        encoded);

  const json &auc = metrics.at("pr_auc");
  text << "\nPR-AUC\n";
  if (auc.at("gap").is_number()) {
    text << "  without autoencoder  " << Fixed(auc.at("raw")) << '\n'
         << "  with autoencoder     " << Fixed(auc.at("encoded")) << '\n'
         << "  gap                  " << Fixed(auc.at("gap")) << '\n';
  } else {
    text << "  undefined (sweep has fewer than two thresholds)\n";
  }

  out << text.str();
  WriteArtifact(dir / "report.txt", [&](std::ostream &f) { f << text.str(); });
}

}  // namespace acenlp
