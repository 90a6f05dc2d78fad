/*
 * Copyright 2026 The bridgewatch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BRIDGEWATCH_AUTOENCODER_HPP_
#define BRIDGEWATCH_AUTOENCODER_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "bridgewatch/core.hpp"

namespace bridgewatch {

enum class Activation { kTanh, kLinear };

std::string_view ActivationName(Activation a);

struct LayerSpec {
  size_t in_dim = 0;
  size_t out_dim = 0;
  Activation activation = Activation::kLinear;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

// Weights are out_dim x in_dim, row-major.
struct LayerParams {
  std::vector<double> weights;
  std::vector<double> bias;

  friend bool operator==(const LayerParams&, const LayerParams&) = default;
};

struct DenseLayer {
  LayerSpec spec;
  LayerParams params;
};

// One LayerParams per layer, shaped like the model.
using Gradients = std::vector<LayerParams>;

class AutoencoderModel {
 public:
  AutoencoderModel() = default;
  // Throws InvalidArgument unless the dims chain and the output width
  // equals the input width.
  explicit AutoencoderModel(std::vector<DenseLayer> layers);

  // D -> 4 (tanh) -> 1 (linear) -> 4 (tanh) -> D (linear).
  static std::vector<LayerSpec> DefaultArchitecture(size_t input_dim = 8);

  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& mutable_layers() { return layers_; }
  size_t input_dim() const { return layers_.empty() ? 0 : layers_.front().spec.in_dim; }
  size_t parameter_count() const;

  friend bool operator==(const AutoencoderModel& a, const AutoencoderModel& b);

 private:
  std::vector<DenseLayer> layers_;
};

// Glorot-uniform weights in +-sqrt(6 / (in + out)), zero biases.
AutoencoderModel InitModel(std::span<const LayerSpec> arch, uint64_t seed);

struct ForwardPass {
  // activations[0] is the input; activations.back() the reconstruction.
  std::vector<std::vector<double>> activations;

  const std::vector<double>& output() const { return activations.back(); }
};

ForwardPass Forward(const AutoencoderModel& model, std::span<const double> x);

// (1/D) * sum (x_i - y_i)^2.
double Mse(std::span<const double> x, std::span<const double> y);

// Exact gradients of Mse(x, Forward(model, x).output()) with respect to every
// weight and bias.
Gradients Backward(const AutoencoderModel& model, std::span<const double> x);

Gradients ZeroGradients(const AutoencoderModel& model);

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  Gradients first_moment;
  Gradients second_moment;
  int64_t step = 0;

  static AdamState ForModel(const AutoencoderModel& model, AdamConfig config = {});
};

// One bias-corrected Adam update, in place. Throws when shapes differ.
void AdamStep(AutoencoderModel& model, const Gradients& grads, AdamState& state);

struct TrainOptions {
  int epochs = 100;
  size_t batch_size = 512;
  uint64_t seed = 0;
  AdamConfig adam;
};

struct TrainResult {
  AutoencoderModel model;
  // Mean per-row MSE over each epoch, measured before each batch's update.
  std::vector<double> loss_history;
};

// Shuffles rows every epoch with a seeded permutation and takes one Adam
// step per batch on the batch-mean gradient. Throws on an empty matrix.
TrainResult Train(AutoencoderModel model, const FeatureMatrix& matrix,
                  const TrainOptions& options);

// Raw score per row is its reconstruction MSE.
ScoreSeries ReconstructionScores(const AutoencoderModel& model,
                                 const FeatureMatrix& matrix, int n_jobs = 1);

// Text format:
//   autoencoder 1
//   layers <n>
//   layer <in> <out> <tanh|linear>     (n lines)
//   W <values...>   b <values...>      (one line per tensor, per layer)
// Values are written with 17 significant digits.
void SaveModel(std::ostream& out, const AutoencoderModel& model);
AutoencoderModel LoadModel(std::istream& in);

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_AUTOENCODER_HPP_
