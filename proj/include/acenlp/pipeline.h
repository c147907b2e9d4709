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

#ifndef ACENLP_PIPELINE_H_
#define ACENLP_PIPELINE_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "acenlp/config.h"
#include "acenlp/errors.h"
#include "acenlp/lexicon.h"

namespace acenlp {

// Pipeline stages in execution order. Each stage writes its artifacts to
// the output directory and later stages can resume from them.
//
//   ner          mentions.jsonl
//   matrix       docs.txt concepts.txt doc_concept.mtx cooc.mtx
//   autoencoder  model.json train_loss.csv embeddings_encoded.tsv
//   score        scored_raw.jsonl scored_encoded.jsonl
//   eval         labels/ pr_raw.csv pr_encoded.csv metrics.json auc.txt
enum class Stage { kNer, kMatrix, kAutoencoder, kScore, kEval };

std::string_view StageName(Stage stage);
// Throws ConfigError on an unknown name.
Stage ParseStage(std::string_view name);

// A stage failed. The CLI maps it to exit code 1.
class StageError : public Error {
 public:
  StageError(Stage stage, const std::string &what)
      : Error("stage " + std::string(StageName(stage)) + ": " + what), stage_(stage) {}
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

struct ConceptSelection {
  Lexicon lexicon;
  ConceptSet leaves;
  ConceptSet selected;
};

// Loads the lexicon and applies the configured leaf/descendant selection.
ConceptSelection SelectConcepts(const PipelineConfig &config);

// Prints counts and writes selected_concepts.tsv to the output directory.
void RunLexiconCommand(const PipelineConfig &config, std::ostream &out);

struct RunSummary {
  std::size_t documents = 0;
  std::size_t mentions = 0;
  std::size_t observed_concepts = 0;
  std::optional<double> auc_raw;
  std::optional<double> auc_encoded;
};

// Runs stages [from, to]. Stages before `from` are read back from the
// output directory. Progress goes to `log`; artifact bytes depend only on
// the config and inputs, never on `threads`.
RunSummary RunPipeline(const PipelineConfig &config, Stage from, Stage to,
                       std::ostream &log);

// Renders metrics.json and the PR curves as text and writes report.txt.
// Throws StageError naming the stage whose artifacts are missing.
void RenderReport(const PipelineConfig &config, std::ostream &out);

}  // namespace acenlp

#endif  // ACENLP_PIPELINE_H_
