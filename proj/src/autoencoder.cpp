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

#include "bridgewatch/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "bridgewatch/error.hpp"
#include "bridgewatch/parallel.hpp"
#include "bridgewatch/random.hpp"
#include "text.hpp"

namespace bridgewatch {
namespace {

double Activate(Activation a, double v) {
  return a == Activation::kTanh ? std::tanh(v) : v;
}

void CheckShapes(const AutoencoderModel& model, const Gradients& g) {
  const auto& layers = model.layers();
  if (g.size() != layers.size()) {
    throw InvalidArgumentError("gradient layer count does not match model");
  }
  for (size_t l = 0; l < layers.size(); ++l) {
    if (g[l].weights.size() != layers[l].params.weights.size() ||
        g[l].bias.size() != layers[l].params.bias.size()) {
      throw InvalidArgumentError("gradient shape does not match layer " +
                                 std::to_string(l));
    }
  }
}

void Accumulate(Gradients& into, const Gradients& g) {
  for (size_t l = 0; l < into.size(); ++l) {
    for (size_t i = 0; i < into[l].weights.size(); ++i) into[l].weights[i] += g[l].weights[i];
    for (size_t i = 0; i < into[l].bias.size(); ++i) into[l].bias[i] += g[l].bias[i];
  }
}

}  // namespace

std::string_view ActivationName(Activation a) {
  return a == Activation::kTanh ? "tanh" : "linear";
}

AutoencoderModel::AutoencoderModel(std::vector<DenseLayer> layers)
    : layers_(std::move(layers)) {
  if (layers_.empty()) throw InvalidArgumentError("model needs at least one layer");
  for (size_t l = 0; l < layers_.size(); ++l) {
    const auto& s = layers_[l].spec;
    if (s.in_dim == 0 || s.out_dim == 0) {
      throw InvalidArgumentError("layer " + std::to_string(l) + " has a zero dimension");
    }
    if (l > 0 && layers_[l - 1].spec.out_dim != s.in_dim) {
      throw InvalidArgumentError("layer " + std::to_string(l) +
                                 " input does not match previous output");
    }
    if (layers_[l].params.weights.size() != s.in_dim * s.out_dim ||
        layers_[l].params.bias.size() != s.out_dim) {
      throw InvalidArgumentError("layer " + std::to_string(l) +
                                 " parameters do not match its spec");
    }
  }
  if (layers_.back().spec.out_dim != layers_.front().spec.in_dim) {
    throw InvalidArgumentError("reconstruction width must equal input width");
  }
}

std::vector<LayerSpec> AutoencoderModel::DefaultArchitecture(size_t input_dim) {
  return {{input_dim, 4, Activation::kTanh},
          {4, 1, Activation::kLinear},
          {1, 4, Activation::kTanh},
          {4, input_dim, Activation::kLinear}};
}

size_t AutoencoderModel::parameter_count() const {
  size_t n = 0;
  for (const auto& l : layers_) n += l.params.weights.size() + l.params.bias.size();
  return n;
}

bool operator==(const AutoencoderModel& a, const AutoencoderModel& b) {
  if (a.layers_.size() != b.layers_.size()) return false;
  for (size_t l = 0; l < a.layers_.size(); ++l) {
    if (!(a.layers_[l].spec == b.layers_[l].spec) ||
        !(a.layers_[l].params == b.layers_[l].params)) {
      return false;
    }
  }
  return true;
}

AutoencoderModel InitModel(std::span<const LayerSpec> arch, uint64_t seed) {
  Rng rng(seed);
  std::vector<DenseLayer> layers;
  for (const LayerSpec& spec : arch) {
    if (spec.in_dim == 0 || spec.out_dim == 0) {
      throw InvalidArgumentError("layer dimensions must be positive");
    }
    const double bound =
        std::sqrt(6.0 / static_cast<double>(spec.in_dim + spec.out_dim));
    std::uniform_real_distribution<double> u(-bound, bound);
    DenseLayer layer{spec, {}};
    layer.params.weights.resize(spec.in_dim * spec.out_dim);
    for (double& w : layer.params.weights) w = u(rng);
    layer.params.bias.assign(spec.out_dim, 0.0);
    layers.push_back(std::move(layer));
  }
  return AutoencoderModel(std::move(layers));
}

ForwardPass Forward(const AutoencoderModel& model, std::span<const double> x) {
  if (x.size() != model.input_dim()) {
    throw InvalidArgumentError("input has " + std::to_string(x.size()) +
                               " values, model expects " +
                               std::to_string(model.input_dim()));
  }
  ForwardPass pass;
  pass.activations.reserve(model.layers().size() + 1);
  pass.activations.emplace_back(x.begin(), x.end());
  for (const DenseLayer& layer : model.layers()) {
    const auto& in = pass.activations.back();
    std::vector<double> out(layer.spec.out_dim);
    for (size_t o = 0; o < layer.spec.out_dim; ++o) {
      double z = layer.params.bias[o];
      const double* w = &layer.params.weights[o * layer.spec.in_dim];
      for (size_t i = 0; i < layer.spec.in_dim; ++i) z += w[i] * in[i];
      out[o] = Activate(layer.spec.activation, z);
    }
    pass.activations.push_back(std::move(out));
  }
  return pass;
}

double Mse(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgumentError("mse: length mismatch");
  if (x.empty()) throw InvalidArgumentError("mse: empty vectors");
  double sum = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return sum / static_cast<double>(x.size());
}

Gradients ZeroGradients(const AutoencoderModel& model) {
  Gradients g;
  g.reserve(model.layers().size());
  for (const auto& l : model.layers()) {
    g.push_back({std::vector<double>(l.params.weights.size(), 0.0),
                 std::vector<double>(l.params.bias.size(), 0.0)});
  }
  return g;
}

Gradients Backward(const AutoencoderModel& model, std::span<const double> x) {
  const ForwardPass pass = Forward(model, x);
  const auto& layers = model.layers();
  Gradients grads = ZeroGradients(model);

  // delta holds dL/d(post-activation output) of the current layer.
  const auto& y = pass.output();
  const double d = static_cast<double>(x.size());
  std::vector<double> delta(y.size());
  for (size_t i = 0; i < y.size(); ++i) delta[i] = -2.0 * (x[i] - y[i]) / d;

  for (size_t l = layers.size(); l-- > 0;) {
    const DenseLayer& layer = layers[l];
    const auto& in = pass.activations[l];
    const auto& out = pass.activations[l + 1];
    if (layer.spec.activation == Activation::kTanh) {
      for (size_t o = 0; o < delta.size(); ++o) delta[o] *= 1.0 - out[o] * out[o];
    }
    std::vector<double> prev(layer.spec.in_dim, 0.0);
    for (size_t o = 0; o < layer.spec.out_dim; ++o) {
      grads[l].bias[o] = delta[o];
      const double* w = &layer.params.weights[o * layer.spec.in_dim];
      double* gw = &grads[l].weights[o * layer.spec.in_dim];
      for (size_t i = 0; i < layer.spec.in_dim; ++i) {
        gw[i] = delta[o] * in[i];
        prev[i] += w[i] * delta[o];
      }
    }
    delta = std::move(prev);
  }
  return grads;
}

AdamState AdamState::ForModel(const AutoencoderModel& model, AdamConfig config) {
  AdamState s;
  s.config = config;
  s.first_moment = ZeroGradients(model);
  s.second_moment = ZeroGradients(model);
  return s;
}

void AdamStep(AutoencoderModel& model, const Gradients& grads, AdamState& state) {
  CheckShapes(model, grads);
  CheckShapes(model, state.first_moment);
  CheckShapes(model, state.second_moment);
  const AdamConfig& c = state.config;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correct1 = 1.0 - std::pow(c.beta1, t);
  const double correct2 = 1.0 - std::pow(c.beta2, t);

  auto update = [&](std::vector<double>& param, const std::vector<double>& g,
                    std::vector<double>& m, std::vector<double>& v) {
    for (size_t i = 0; i < param.size(); ++i) {
      m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g[i];
      v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g[i] * g[i];
      const double m_hat = m[i] / correct1;
      const double v_hat = v[i] / correct2;
      param[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
  };
  auto& layers = model.mutable_layers();
  for (size_t l = 0; l < layers.size(); ++l) {
    update(layers[l].params.weights, grads[l].weights,
           state.first_moment[l].weights, state.second_moment[l].weights);
    update(layers[l].params.bias, grads[l].bias, state.first_moment[l].bias,
           state.second_moment[l].bias);
  }
}

TrainResult Train(AutoencoderModel model, const FeatureMatrix& matrix,
                  const TrainOptions& options) {
  if (matrix.empty()) throw InvalidArgumentError("cannot train on an empty matrix");
  if (options.epochs < 0) throw InvalidArgumentError("epochs must be >= 0");
  if (options.batch_size == 0) throw InvalidArgumentError("batch_size must be >= 1");
  if (matrix.cols() != model.input_dim()) {
    throw InvalidArgumentError("matrix width does not match the model input");
  }
  TrainResult result;
  AdamState adam = AdamState::ForModel(model, options.adam);
  Rng rng(options.seed);
  std::vector<size_t> order(matrix.rows());
  std::iota(order.begin(), order.end(), size_t{0});

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (size_t begin = 0; begin < order.size(); begin += options.batch_size) {
      const size_t end = std::min(order.size(), begin + options.batch_size);
      Gradients batch = ZeroGradients(model);
      for (size_t k = begin; k < end; ++k) {
        const auto x = matrix.row(order[k]);
        epoch_loss += Mse(x, Forward(model, x).output());
        Accumulate(batch, Backward(model, x));
      }
      const double scale = 1.0 / static_cast<double>(end - begin);
      for (auto& layer : batch) {
        for (double& g : layer.weights) g *= scale;
        for (double& g : layer.bias) g *= scale;
      }
      AdamStep(model, batch, adam);
    }
    result.loss_history.push_back(epoch_loss / static_cast<double>(order.size()));
  }
  result.model = std::move(model);
  return result;
}

ScoreSeries ReconstructionScores(const AutoencoderModel& model,
                                 const FeatureMatrix& matrix, int n_jobs) {
  std::vector<double> raw(matrix.rows());
  ParallelFor(matrix.rows(), n_jobs, [&](size_t begin, size_t end) {
    for (size_t r = begin; r < end; ++r) {
      const auto x = matrix.row(r);
      raw[r] = Mse(x, Forward(model, x).output());
    }
  });
  return MakeScoreSeries(matrix.timestamps(), std::move(raw),
                         Orientation::kMoreIsAnomalous);
}

void SaveModel(std::ostream& out, const AutoencoderModel& model) {
  out << "autoencoder 1\n";
  out << "layers " << model.layers().size() << "\n";
  for (const auto& l : model.layers()) {
    out << "layer " << l.spec.in_dim << ' ' << l.spec.out_dim << ' '
        << ActivationName(l.spec.activation) << "\n";
  }
  auto tensor = [&](char tag, const std::vector<double>& values) {
    out << tag;
    for (double v : values) out << ' ' << FormatNumber17(v);
    out << "\n";
  };
  for (const auto& l : model.layers()) {
    tensor('W', l.params.weights);
    tensor('b', l.params.bias);
  }
}

AutoencoderModel LoadModel(std::istream& in) {
  auto fail = [](const std::string& what) -> Error {
    return ParseError("model file: " + what);
  };
  std::string line;
  if (!std::getline(in, line) || Trim(line) != "autoencoder 1") {
    throw fail("missing 'autoencoder 1' header");
  }
  size_t count = 0;
  {
    if (!std::getline(in, line)) throw fail("missing layer count");
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag >> count) || tag != "layers" || count == 0) {
      throw fail("bad layer count line '" + line + "'");
    }
  }
  std::vector<DenseLayer> layers(count);
  for (auto& l : layers) {
    if (!std::getline(in, line)) throw fail("missing layer spec");
    std::istringstream ss(line);
    std::string tag, act;
    if (!(ss >> tag >> l.spec.in_dim >> l.spec.out_dim >> act) || tag != "layer") {
      throw fail("bad layer spec '" + line + "'");
    }
    if (act == "tanh") l.spec.activation = Activation::kTanh;
    else if (act == "linear") l.spec.activation = Activation::kLinear;
    else throw fail("unknown activation '" + act + "'");
  }
  auto read_tensor = [&](char tag, size_t n) {
    if (!std::getline(in, line)) throw fail("missing tensor line");
    const auto fields = SplitFields(Trim(line), ' ');
    if (fields.empty() || fields[0] != std::string_view(&tag, 1) ||
        fields.size() != n + 1) {
      throw fail(std::string("expected ") + tag + " line with " +
                 std::to_string(n) + " values");
    }
    std::vector<double> values;
    values.reserve(n);
    for (size_t i = 1; i < fields.size(); ++i) {
      const auto v = ParseCell(fields[i]);
      if (!v) throw fail("bad number '" + std::string(fields[i]) + "'");
      values.push_back(*v);
    }
    return values;
  };
  for (auto& l : layers) {
    l.params.weights = read_tensor('W', l.spec.in_dim * l.spec.out_dim);
    l.params.bias = read_tensor('b', l.spec.out_dim);
  }
  return AutoencoderModel(std::move(layers));
}

}  // namespace bridgewatch
