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

// Independent reference implementations used as test oracles.

#ifndef BRIDGEWATCH_TESTS_ORACLES_HPP_
#define BRIDGEWATCH_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "bridgewatch/autoencoder.hpp"

namespace bridgewatch::oracle {

using Rows = std::vector<std::vector<double>>;

inline double AvgPath(double n) {
  if (n <= 1.0) return 0.0;
  if (n == 2.0) return 1.0;
  return 2.0 * (std::log(n - 1.0) + 0.5772156649) - 2.0 * (n - 1.0) / n;
}

inline double Distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

struct NaiveLabeling {
  std::vector<int> labels;
  std::vector<int> kinds;  // 0 core, 1 border, 2 noise
};

// Full distance matrix; clusters are connected components of core points,
// numbered by their smallest core index; a border point joins the cluster
// of its lowest-numbered core neighbour.
inline NaiveLabeling NaiveDbscan(const Rows& rows, double eps, size_t min_samples) {
  const size_t n = rows.size();
  std::vector<std::vector<bool>> near(n, std::vector<bool>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) near[i][j] = Distance(rows[i], rows[j]) <= eps;
  }
  std::vector<bool> core(n);
  for (size_t i = 0; i < n; ++i) {
    core[i] = static_cast<size_t>(std::count(near[i].begin(), near[i].end(), true)) >=
              min_samples;
  }
  std::vector<size_t> comp(n);
  for (size_t i = 0; i < n; ++i) comp[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < n; ++i) {
      if (!core[i]) continue;
      for (size_t j = 0; j < n; ++j) {
        if (core[j] && near[i][j] && comp[j] < comp[i]) {
          comp[i] = comp[j];
          changed = true;
        }
      }
    }
  }
  std::map<size_t, int> id;
  for (size_t i = 0; i < n; ++i) {
    if (core[i] && !id.count(comp[i])) {
      const int next = static_cast<int>(id.size());
      id[comp[i]] = next;
    }
  }
  NaiveLabeling out{std::vector<int>(n, -1), std::vector<int>(n, 2)};
  for (size_t i = 0; i < n; ++i) {
    if (core[i]) {
      out.labels[i] = id[comp[i]];
      out.kinds[i] = 0;
      continue;
    }
    for (size_t j = 0; j < n; ++j) {
      if (core[j] && near[i][j]) {
        const int l = id[comp[j]];
        if (out.labels[i] < 0 || l < out.labels[i]) out.labels[i] = l;
        out.kinds[i] = 1;
      }
    }
  }
  return out;
}

inline std::vector<double> NaiveKnn(const Rows& rows, size_t k) {
  std::vector<double> out;
  for (size_t i = 0; i < rows.size(); ++i) {
    std::vector<double> d;
    for (size_t j = 0; j < rows.size(); ++j) {
      if (j != i) d.push_back(Distance(rows[i], rows[j]));
    }
    std::sort(d.begin(), d.end());
    double s = 0.0;
    for (size_t j = 0; j < k; ++j) s += d[j];
    out.push_back(s / static_cast<double>(k));
  }
  return out;
}

// Layer-by-layer evaluation with explicit index arithmetic.
inline std::vector<double> NaiveForward(const AutoencoderModel& model,
                                        const std::vector<double>& x) {
  std::vector<double> a = x;
  for (const auto& layer : model.layers()) {
    std::vector<double> z(layer.spec.out_dim);
    for (size_t o = 0; o < layer.spec.out_dim; ++o) {
      long double acc = layer.params.bias[o];
      for (size_t i = 0; i < layer.spec.in_dim; ++i) {
        acc += static_cast<long double>(layer.params.weights[o * layer.spec.in_dim + i]) *
               a[i];
      }
      const double v = static_cast<double>(acc);
      z[o] = layer.spec.activation == Activation::kTanh ? std::tanh(v) : v;
    }
    a = z;
  }
  return a;
}

inline double NaiveLoss(const AutoencoderModel& model, const std::vector<double>& x) {
  const auto y = NaiveForward(model, x);
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return s / static_cast<double>(x.size());
}

// Visits every parameter as (layer, is_bias, index, reference).
template <typename Fn>
void ForEachParameter(AutoencoderModel& model, Fn&& fn) {
  auto& layers = model.mutable_layers();
  for (size_t l = 0; l < layers.size(); ++l) {
    for (size_t i = 0; i < layers[l].params.weights.size(); ++i) {
      fn(l, false, i, layers[l].params.weights[i]);
    }
    for (size_t i = 0; i < layers[l].params.bias.size(); ++i) {
      fn(l, true, i, layers[l].params.bias[i]);
    }
  }
}

struct GradientCheck {
  size_t parameters = 0;
  size_t failures = 0;
  double worst_relative = 0.0;
};

// Central differences with step h against the analytic gradient.
inline GradientCheck CheckGradients(AutoencoderModel model, const std::vector<double>& x,
                                    const Gradients& analytic, double h = 1e-5) {
  GradientCheck out;
  ForEachParameter(model, [&](size_t l, bool is_bias, size_t i, double& p) {
    const double saved = p;
    p = saved + h;
    const double up = NaiveLoss(model, x);
    p = saved - h;
    const double down = NaiveLoss(model, x);
    p = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double g = is_bias ? analytic[l].bias[i] : analytic[l].weights[i];
    ++out.parameters;
    if (std::abs(g) < 1e-6) {
      if (std::abs(g - numeric) >= 1e-8) ++out.failures;
      return;
    }
    const double rel = std::abs(g - numeric) / std::max(std::abs(g), std::abs(numeric));
    out.worst_relative = std::max(out.worst_relative, rel);
    if (rel >= 1e-4) ++out.failures;
  });
  return out;
}

// Groups values by floor(t / window) and returns per-window means.
inline std::map<int64_t, std::vector<double>> NaiveWindowMeans(
    const std::vector<int64_t>& t_us, const Rows& rows, int64_t window_us) {
  std::map<int64_t, std::vector<std::vector<double>>> groups;
  for (size_t i = 0; i < t_us.size(); ++i) {
    int64_t k = t_us[i] / window_us;
    if (t_us[i] % window_us != 0 && t_us[i] < 0) --k;
    groups[k * window_us].push_back(rows[i]);
  }
  std::map<int64_t, std::vector<double>> out;
  for (const auto& [start, members] : groups) {
    std::vector<double> mean(members.front().size(), 0.0);
    for (const auto& m : members) {
      for (size_t c = 0; c < m.size(); ++c) mean[c] += m[c];
    }
    for (double& v : mean) v /= static_cast<double>(members.size());
    out[start] = mean;
  }
  return out;
}

}  // namespace bridgewatch::oracle

#endif  // BRIDGEWATCH_TESTS_ORACLES_HPP_
