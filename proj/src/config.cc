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

#include "acenlp/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include "acenlp/text.h"

namespace acenlp {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>> &KnownKeys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"paths", {"lexicon", "corpus", "gold", "output_dir"}},
      {"lexicon", {"leaf_groups", "descendant_roots"}},
      {"ner", {"negation_cues", "negation_window", "stop_surfaces"}},
      {"matrix", {"normalized"}},
      {"autoencoder",
       {"encoded_dim", "learning_rate", "epochs", "batch_size", "activation"}},
      {"sweep", {"thresholds", "start", "stop", "step"}},
      {"run", {"seed", "threads"}},
  };
  return keys;
}

template <typename T>
T ParseNumber(const std::string &key, const std::string &text) {
  std::string_view s = Trim(text);
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("bad value '" + text + "' for " + key);
  }
  return value;
}

bool ParseBool(const std::string &key, const std::string &text) {
  std::string v = FoldCase(Trim(text));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("bad boolean '" + text + "' for " + key);
}

}  // namespace

PipelineConfig ParseConfig(std::istream &in, const std::filesystem::path &base_dir,
                           const std::vector<std::string> &overrides) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error &e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  for (const std::string &o : overrides) {
    auto eq = o.find('=');
    if (eq == std::string::npos || o.find('.') > eq) {
      throw ConfigError("override '" + o + "' is not section.key=value");
    }
    tree.put(std::string(Trim(o.substr(0, eq))), std::string(Trim(o.substr(eq + 1))));
  }

  // Unknown sections or keys are typos; reject them.
  for (const auto &[section, body] : tree) {
    auto known = KnownKeys().find(section);
    if (known == KnownKeys().end()) throw ConfigError("unknown config section [" + section + "]");
    for (const auto &[key, value] : body) {
      if (!known->second.count(key)) {
        throw ConfigError("unknown config key " + section + "." + key);
      }
    }
  }

  auto get = [&](const std::string &key) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(key)) return std::string(Trim(*v));
    return std::nullopt;
  };
  auto path = [&](const std::string &key) -> std::filesystem::path {
    auto v = get(key);
    if (!v || v->empty()) return {};
    std::filesystem::path p(*v);
    return p.is_absolute() ? p : base_dir / p;
  };

  PipelineConfig config;
  config.lexicon_path = path("paths.lexicon");
  config.corpus_path = path("paths.corpus");
  config.gold_path = path("paths.gold");
  if (auto out = path("paths.output_dir"); !out.empty()) config.output_dir = out;

  if (auto v = get("lexicon.leaf_groups")) config.leaf_groups = SplitList(*v, ',');
  if (auto v = get("lexicon.descendant_roots")) config.descendant_roots = SplitList(*v, ',');

  if (auto v = get("ner.negation_cues")) config.filter_rules.negation_cues = SplitList(*v, ',');
  if (auto v = get("ner.stop_surfaces")) config.filter_rules.stop_surfaces = SplitList(*v, ',');
  if (auto v = get("ner.negation_window")) {
    config.filter_rules.negation_window = ParseNumber<int>("ner.negation_window", *v);
    if (config.filter_rules.negation_window < 0) {
      throw ConfigError("ner.negation_window must be non-negative");
    }
  }

  if (auto v = get("matrix.normalized")) config.normalized = ParseBool("matrix.normalized", *v);

  AEConfig &ae = config.autoencoder;
  if (auto v = get("autoencoder.encoded_dim")) {
    ae.encoded_dim = ParseNumber<std::size_t>("autoencoder.encoded_dim", *v);
  }
  if (auto v = get("autoencoder.learning_rate")) {
    ae.learning_rate = ParseNumber<double>("autoencoder.learning_rate", *v);
    if (!(ae.learning_rate >= 0)) throw ConfigError("autoencoder.learning_rate must be >= 0");
  }
  if (auto v = get("autoencoder.epochs")) {
    ae.epochs = ParseNumber<std::size_t>("autoencoder.epochs", *v);
    if (ae.epochs == 0) throw ConfigError("autoencoder.epochs must be at least 1");
  }
  if (auto v = get("autoencoder.batch_size")) {
    ae.batch_size = ParseNumber<std::size_t>("autoencoder.batch_size", *v);
    if (ae.batch_size == 0) throw ConfigError("autoencoder.batch_size must be at least 1");
  }
  if (auto v = get("autoencoder.activation")) {
    try {
      ae.activation = ParseActivation(*v);
    } catch (const Error &e) {
      throw ConfigError(e.what());
    }
  }

  try {
    if (auto v = get("sweep.thresholds")) {
      std::vector<double> values;
      for (const auto &t : SplitList(*v, ',')) {
        values.push_back(ParseNumber<double>("sweep.thresholds", t));
      }
      config.sweep = ThresholdSweep(std::move(values));
    } else if (get("sweep.start") || get("sweep.stop") || get("sweep.step")) {
      double start = ParseNumber<double>("sweep.start", get("sweep.start").value_or("0"));
      double stop = ParseNumber<double>("sweep.stop", get("sweep.stop").value_or("1"));
      double step = ParseNumber<double>("sweep.step", get("sweep.step").value_or("0.05"));
      config.sweep = ThresholdSweep::Range(start, stop, step);
    }
  } catch (const ConfigError &) {
    throw;
  } catch (const Error &e) {
    throw ConfigError(std::string("sweep: ") + e.what());
  }

  if (auto v = get("run.seed")) config.seed = ParseNumber<std::uint64_t>("run.seed", *v);
  if (auto v = get("run.threads")) {
    config.threads = ParseNumber<int>("run.threads", *v);
    if (config.threads < 1) throw ConfigError("run.threads must be at least 1");
  }
  ae.seed = config.seed;
  return config;
}

PipelineConfig LoadConfig(const std::filesystem::path &path,
                          const std::vector<std::string> &overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return ParseConfig(in, path.parent_path(), overrides);
}

void RequireInput(const std::filesystem::path &path, const char *what) {
  if (path.empty()) throw ConfigError(std::string("no ") + what + " path configured");
  if (!std::filesystem::is_regular_file(path)) {
    throw ConfigError(std::string(what) + " file not found: " + path.string());
  }
}

}  // namespace acenlp
