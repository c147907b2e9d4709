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

#ifndef ACENLP_AUTOENCODER_H_
#define ACENLP_AUTOENCODER_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "acenlp/matrix.h"

namespace acenlp {

enum class Activation { kIdentity, kSigmoid };

std::string_view ActivationName(Activation a);
// Throws Error on an unknown name.
Activation ParseActivation(std::string_view name);

struct AEConfig {
  std::size_t input_dim = 0;
  std::size_t encoded_dim = 0;
  double learning_rate = 0.01;
  std::size_t epochs = 500;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
  Activation activation = Activation::kIdentity;

  // Throws Error unless 0 < encoded_dim < input_dim, learning_rate >= 0,
  // epochs >= 1 and batch_size >= 1.
  void Validate() const;
};

// Encoder and decoder weights, row-major. Also used for gradients.
struct AEParameters {
  std::vector<double> w_enc;  // encoded_dim x input_dim
  std::vector<double> b_enc;  // encoded_dim
  std::vector<double> w_dec;  // input_dim x encoded_dim
  std::vector<double> b_dec;  // input_dim

  bool operator==(const AEParameters &) const = default;
};

// One encoder layer (activation configurable) and one linear decoder layer:
//   encoded = act(W_enc x + b_enc)
//   reconstructed = W_dec encoded + b_dec
struct AEModel {
  std::size_t input_dim = 0;
  std::size_t encoded_dim = 0;
  Activation activation = Activation::kIdentity;
  std::uint64_t seed = 0;
  AEParameters params;

  bool operator==(const AEModel &) const = default;
};

// Glorot-uniform weights, s = sqrt(6 / (input_dim + encoded_dim)), zero
// biases. Deterministic in config.seed.
AEModel InitModel(const AEConfig &config);

struct Encoding {
  Vector encoded;
  Vector reconstructed;
};

Encoding Forward(const AEModel &model, std::span<const double> x);

struct LossAndGradients {
  double loss = 0;
  AEParameters grads;
};

// Mean over the batch of the per-element squared reconstruction error
// (1/m) * sum_i (reconstructed_i - x_i)^2, with its exact gradient.
LossAndGradients ComputeLossAndGradients(const AEModel &model,
                                         std::span<const Vector> batch);

// Mean reconstruction error over `data`, no gradients.
double ReconstructionLoss(const AEModel &model, std::span<const Vector> data);

struct TrainReport {
  // Full-data reconstruction error measured after each epoch.
  std::vector<double> loss_per_epoch;
  double final_loss = 0;
  std::uint64_t seed = 0;

  bool operator==(const TrainReport &) const = default;
};

// Mini-batch gradient descent with per-epoch shuffling seeded from
// config.seed. Throws Error naming the epoch if the loss becomes non-finite.
std::pair<AEModel, TrainReport> Train(AEModel model, std::span<const Vector> data,
                                      const AEConfig &config);

// Encoded vector of every co-occurrence row, in concept order.
std::vector<Vector> EncodeAll(const AEModel &model, const CoocMatrix &cooc,
                              bool normalized);

// JSON model file. Parameters are written with 17 significant digits, so a
// save/load cycle reproduces every value bit for bit.
void SaveModel(std::ostream &out, const AEModel &model);
AEModel LoadModel(std::istream &in, const std::string &source = "<model>");

}  // namespace acenlp

#endif  // ACENLP_AUTOENCODER_H_
