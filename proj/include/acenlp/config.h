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

#ifndef ACENLP_CONFIG_H_
#define ACENLP_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "acenlp/autoencoder.h"
#include "acenlp/errors.h"
#include "acenlp/lexicon.h"
#include "acenlp/ner.h"
#include "acenlp/selflabel.h"

namespace acenlp {

// Bad configuration or command line. The CLI maps it to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Everything a pipeline run depends on. Loaded from an INI file:
//
//   [paths]        lexicon, corpus, gold, output_dir
//   [lexicon]      leaf_groups, descendant_roots        (comma lists)
//   [ner]          negation_cues, stop_surfaces (comma lists), negation_window
//   [matrix]       normalized
//   [autoencoder]  encoded_dim (0 = m/4), learning_rate, epochs, batch_size,
//                  activation
//   [sweep]        thresholds (comma list) or start, stop, step
//   [run]          seed, threads
//
// Relative paths resolve against the directory of the config file.
struct PipelineConfig {
  std::filesystem::path lexicon_path;
  std::filesystem::path corpus_path;
  std::filesystem::path gold_path;
  std::filesystem::path output_dir = "out";

  // Selected concepts are the leaves whose group is listed here plus all
  // descendants of the listed roots. Both empty selects every concept.
  std::vector<std::string> leaf_groups;
  std::vector<ConceptId> descendant_roots;

  FilterRules filter_rules = FilterRules::Defaults();
  bool normalized = true;

  // input_dim is set from the data; encoded_dim 0 means max(1, m / 4).
  // seed is taken from `seed` below.
  AEConfig autoencoder;
  ThresholdSweep sweep = ThresholdSweep::Default();

  std::uint64_t seed = 7;
  int threads = 1;
};

// `overrides` are `section.key=value` strings applied on top of the file.
// Throws ConfigError on unknown keys or bad values.
PipelineConfig ParseConfig(std::istream &in, const std::filesystem::path &base_dir,
                           const std::vector<std::string> &overrides = {});
PipelineConfig LoadConfig(const std::filesystem::path &path,
                          const std::vector<std::string> &overrides = {});

// Throws ConfigError naming the first required input file that is missing.
void RequireInput(const std::filesystem::path &path, const char *what);

}  // namespace acenlp

#endif  // ACENLP_CONFIG_H_
