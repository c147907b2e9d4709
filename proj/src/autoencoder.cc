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

#include "acenlp/autoencoder.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>

#include "acenlp/errors.h"
#include "acenlp/random.h"
#include "json.hpp"

namespace acenlp {

namespace {

constexpr int kModelVersion = 1;
constexpr char kModelFormat[] = "acenlp-autoencoder";

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void CheckDim(const AEModel &model, std::size_t dim) {
  if (dim != model.input_dim) {
    throw Error("input has dimension " + std::to_string(dim) + ", model expects " +
                std::to_string(model.input_dim));
  }
}

// Forward pass keeping the pre-activation for backprop.
struct Trace {
  Vector pre;
  Vector encoded;
  Vector reconstructed;
};

Trace Run(const AEModel &model, std::span<const double> x) {
  const std::size_t m = model.input_dim, k = model.encoded_dim;
  const AEParameters &p = model.params;
  Trace t{Vector(k), Vector(k), Vector(m)};
  for (std::size_t j = 0; j < k; ++j) {
    const double *w = &p.w_enc[j * m];
    double z = p.b_enc[j];
    for (std::size_t l = 0; l < m; ++l) z += w[l] * x[l];
    t.pre[j] = z;
    t.encoded[j] = model.activation == Activation::kSigmoid ? Sigmoid(z) : z;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double *w = &p.w_dec[i * k];
    double r = p.b_dec[i];
    for (std::size_t j = 0; j < k; ++j) r += w[j] * t.encoded[j];
    t.reconstructed[i] = r;
  }
  return t;
}

AEParameters ZeroLike(const AEModel &model) {
  const std::size_t m = model.input_dim, k = model.encoded_dim;
  return {std::vector<double>(k * m, 0.0), std::vector<double>(k, 0.0),
          std::vector<double>(m * k, 0.0), std::vector<double>(m, 0.0)};
}

void WriteArray(std::ostream &out, const std::vector<double> &values) {
  char buf[32];
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    if (i) out << ',';
    out << buf;
  }
  out << ']';
}

}  // namespace

std::string_view ActivationName(Activation a) {
  return a == Activation::kSigmoid ? "sigmoid" : "identity";
}

Activation ParseActivation(std::string_view name) {
  if (name == "identity" || name == "linear") return Activation::kIdentity;
  if (name == "sigmoid") return Activation::kSigmoid;
  throw Error("unknown activation '" + std::string(name) + "'");
}

void AEConfig::Validate() const {
  if (encoded_dim == 0 || encoded_dim >= input_dim) {
    throw Error("autoencoder needs 0 < encoded_dim < input_dim, got " +
                std::to_string(encoded_dim) + " and " + std::to_string(input_dim));
  }
  if (!(learning_rate >= 0) || !std::isfinite(learning_rate)) {
    throw Error("learning rate must be a finite non-negative number");
  }
  if (epochs == 0) throw Error("epochs must be at least 1");
  if (batch_size == 0) throw Error("batch size must be at least 1");
}

AEModel InitModel(const AEConfig &config) {
  config.Validate();
  AEModel model;
  model.input_dim = config.input_dim;
  model.encoded_dim = config.encoded_dim;
  model.activation = config.activation;
  model.seed = config.seed;
  model.params = ZeroLike(model);
  const double s = std::sqrt(6.0 / static_cast<double>(config.input_dim + config.encoded_dim));
  Rng rng(config.seed);
  for (double &w : model.params.w_enc) w = rng.Uniform(-s, s);
  for (double &w : model.params.w_dec) w = rng.Uniform(-s, s);
  return model;
}

Encoding Forward(const AEModel &model, std::span<const double> x) {
  CheckDim(model, x.size());
  Trace t = Run(model, x);
  return {std::move(t.encoded), std::move(t.reconstructed)};
}

LossAndGradients ComputeLossAndGradients(const AEModel &model,
                                         std::span<const Vector> batch) {
  if (batch.empty()) throw Error("loss of an empty batch");
  const std::size_t m = model.input_dim, k = model.encoded_dim;
  const AEParameters &p = model.params;
  LossAndGradients out{0.0, ZeroLike(model)};
  AEParameters &g = out.grads;
  const double scale = 1.0 / (static_cast<double>(m) * static_cast<double>(batch.size()));
  Vector d_rec(m), d_enc(k);
  for (const Vector &x : batch) {
    CheckDim(model, x.size());
    Trace t = Run(model, x);
    for (std::size_t i = 0; i < m; ++i) {
      const double diff = t.reconstructed[i] - x[i];
      out.loss += diff * diff * scale;
      d_rec[i] = 2.0 * diff * scale;
    }
    std::fill(d_enc.begin(), d_enc.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      g.b_dec[i] += d_rec[i];
      double *gw = &g.w_dec[i * k];
      const double *w = &p.w_dec[i * k];
      for (std::size_t j = 0; j < k; ++j) {
        gw[j] += d_rec[i] * t.encoded[j];
        d_enc[j] += w[j] * d_rec[i];
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      double d_pre = d_enc[j];
      if (model.activation == Activation::kSigmoid) {
        d_pre *= t.encoded[j] * (1.0 - t.encoded[j]);
      }
      g.b_enc[j] += d_pre;
      double *gw = &g.w_enc[j * m];
      for (std::size_t l = 0; l < m; ++l) gw[l] += d_pre * x[l];
    }
  }
  return out;
}

double ReconstructionLoss(const AEModel &model, std::span<const Vector> data) {
  if (data.empty()) return 0;
  double total = 0;
  for (const Vector &x : data) {
    CheckDim(model, x.size());
    Trace t = Run(model, x);
    double err = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double diff = t.reconstructed[i] - x[i];
      err += diff * diff;
    }
    total += err / static_cast<double>(model.input_dim);
  }
  return total / static_cast<double>(data.size());
}

std::pair<AEModel, TrainReport> Train(AEModel model, std::span<const Vector> data,
                                      const AEConfig &config) {
  config.Validate();
  if (config.input_dim != model.input_dim || config.encoded_dim != model.encoded_dim) {
    throw Error("training config does not match model shape");
  }
  if (data.empty()) throw Error("no training data");
  for (const Vector &x : data) CheckDim(model, x.size());

  TrainReport report;
  report.seed = config.seed;
  Rng rng(config.seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Vector> batch;
  auto step = [&](std::vector<double> &w, const std::vector<double> &g) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= config.learning_rate * g[i];
  };
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.Shuffle(order.begin(), order.end());
    for (std::size_t b = 0; b < order.size(); b += config.batch_size) {
      batch.clear();
      for (std::size_t i = b; i < std::min(order.size(), b + config.batch_size); ++i) {
        batch.push_back(data[order[i]]);
      }
      LossAndGradients lg = ComputeLossAndGradients(model, batch);
      step(model.params.w_enc, lg.grads.w_enc);
      step(model.params.b_enc, lg.grads.b_enc);
      step(model.params.w_dec, lg.grads.w_dec);
      step(model.params.b_dec, lg.grads.b_dec);
    }
    double loss = ReconstructionLoss(model, data);
    if (!std::isfinite(loss)) {
      throw Error("autoencoder training diverged at epoch " + std::to_string(epoch));
    }
    report.loss_per_epoch.push_back(loss);
  }
  report.final_loss = report.loss_per_epoch.back();
  return {std::move(model), std::move(report)};
}

std::vector<Vector> EncodeAll(const AEModel &model, const CoocMatrix &cooc,
                              bool normalized) {
  CheckDim(model, cooc.m_concepts());
  std::vector<Vector> out;
  out.reserve(cooc.m_concepts());
  for (std::size_t i = 0; i < cooc.m_concepts(); ++i) {
    out.push_back(Forward(model, ConceptEmbedding(cooc, i, normalized)).encoded);
  }
  return out;
}

void SaveModel(std::ostream &out, const AEModel &model) {
  out << "{\"format\":\"" << kModelFormat << "\",\"version\":" << kModelVersion
      << ",\"input_dim\":" << model.input_dim
      << ",\"encoded_dim\":" << model.encoded_dim << ",\"activation\":\""
      << ActivationName(model.activation) << "\",\"seed\":" << model.seed;
  out << ",\n\"w_enc\":";
  WriteArray(out, model.params.w_enc);
  out << ",\n\"b_enc\":";
  WriteArray(out, model.params.b_enc);
  out << ",\n\"w_dec\":";
  WriteArray(out, model.params.w_dec);
  out << ",\n\"b_dec\":";
  WriteArray(out, model.params.b_dec);
  out << "}\n";
}

AEModel LoadModel(std::istream &in, const std::string &source) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(source, 0, e.what());
  }
  try {
    if (obj.at("format").get<std::string>() != kModelFormat) {
      throw ParseError(source, 0, "not an autoencoder model file");
    }
    if (obj.at("version").get<int>() != kModelVersion) {
      throw ParseError(source, 0, "unsupported model version");
    }
    AEModel model;
    model.input_dim = obj.at("input_dim").get<std::size_t>();
    model.encoded_dim = obj.at("encoded_dim").get<std::size_t>();
    model.activation = ParseActivation(obj.at("activation").get<std::string>());
    model.seed = obj.at("seed").get<std::uint64_t>();
    model.params.w_enc = obj.at("w_enc").get<std::vector<double>>();
    model.params.b_enc = obj.at("b_enc").get<std::vector<double>>();
    model.params.w_dec = obj.at("w_dec").get<std::vector<double>>();
    model.params.b_dec = obj.at("b_dec").get<std::vector<double>>();
    const std::size_t m = model.input_dim, k = model.encoded_dim;
    if (model.params.w_enc.size() != k * m || model.params.b_enc.size() != k ||
        model.params.w_dec.size() != m * k || model.params.b_dec.size() != m) {
      throw ParseError(source, 0, "parameter arrays do not match the declared shape");
    }
    return model;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(source, 0, e.what());
  }
}

}  // namespace acenlp
