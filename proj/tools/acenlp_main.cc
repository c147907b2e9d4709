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

// acenlp: ontology-driven concept extraction and self-labelling pipeline.
//
//   acenlp lexicon --config pipeline.ini
//   acenlp run     --config pipeline.ini [--from-stage S] [--to-stage S]
//   acenlp report  --config pipeline.ini
//
// Exit codes: 0 success, 1 pipeline error, 2 usage or configuration error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acenlp/config.h"
#include "acenlp/pipeline.h"

namespace {

struct CommonOptions {
  std::string config;
  std::vector<std::string> overrides;
  std::string output_dir;
  long long seed = -1;
  int threads = 0;
};

void AddCommon(CLI::App *cmd, CommonOptions &opts) {
  cmd->add_option("-c,--config", opts.config, "Pipeline configuration (INI)")
      ->required();
  cmd->add_option("--set", opts.overrides, "Override a config value: section.key=value");
  cmd->add_option("-o,--output-dir", opts.output_dir, "Override paths.output_dir");
  cmd->add_option("--seed", opts.seed, "Override run.seed")->check(CLI::NonNegativeNumber);
  cmd->add_option("-j,--threads", opts.threads, "Override run.threads")
      ->check(CLI::PositiveNumber);
}

acenlp::PipelineConfig Load(const CommonOptions &opts) {
  std::vector<std::string> overrides = opts.overrides;
  if (!opts.output_dir.empty()) overrides.push_back("paths.output_dir=" + opts.output_dir);
  if (opts.seed >= 0) overrides.push_back("run.seed=" + std::to_string(opts.seed));
  if (opts.threads > 0) overrides.push_back("run.threads=" + std::to_string(opts.threads));
  acenlp::PipelineConfig config = acenlp::LoadConfig(opts.config, overrides);
  // --output-dir is relative to the working directory, not the config file.
  if (!opts.output_dir.empty()) config.output_dir = opts.output_dir;
  return config;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Ontology-driven concept extraction with self-supervised labelling"};
  app.require_subcommand(1);

  CommonOptions lexicon_opts, run_opts, report_opts;
  std::string from_stage = "ner", to_stage = "eval";

  CLI::App *lexicon = app.add_subcommand("lexicon", "Load the lexicon and summarize the selection");
  AddCommon(lexicon, lexicon_opts);
  CLI::App *run = app.add_subcommand("run", "Run the pipeline");
  AddCommon(run, run_opts);
  run->add_option("--from-stage", from_stage,
                  "First stage to execute; earlier stages are read from the output dir");
  run->add_option("--to-stage", to_stage, "Last stage to execute");
  CLI::App *report = app.add_subcommand("report", "Render the evaluation report");
  AddCommon(report, report_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*lexicon) {
      acenlp::RunLexiconCommand(Load(lexicon_opts), std::cout);
    } else if (*run) {
      acenlp::PipelineConfig config = Load(run_opts);
      acenlp::Stage from = acenlp::ParseStage(from_stage);
      acenlp::Stage to = acenlp::ParseStage(to_stage);
      acenlp::RunSummary summary = acenlp::RunPipeline(config, from, to, std::cerr);
      if (summary.auc_raw && summary.auc_encoded) {
        std::printf("PR-AUC without autoencoder: %.4f\n", *summary.auc_raw);
        std::printf("PR-AUC with autoencoder:    %.4f\n", *summary.auc_encoded);
        std::printf("gap:                        %.4f\n",
                    std::abs(*summary.auc_raw - *summary.auc_encoded));
      }
    } else if (*report) {
      acenlp::RenderReport(Load(report_opts), std::cout);
    }
  } catch (const acenlp::ConfigError &e) {
    std::cerr << "acenlp: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "acenlp: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
