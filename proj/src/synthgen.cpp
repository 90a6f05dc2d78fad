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

#include "bridgewatch/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include "bridgewatch/error.hpp"
#include "bridgewatch/ingest.hpp"
#include "bridgewatch/parallel.hpp"
#include "bridgewatch/random.hpp"

namespace bridgewatch {
namespace {

constexpr double kSecondsPerDay = 86400.0;
constexpr uint64_t kTrafficStream = 0;
constexpr uint64_t kMissingStream = 0x6d697373;  // "miss"

double DefaultSigma(const std::string& channel) {
  if (channel.rfind("acx", 0) == 0) return 8.0;
  if (channel.rfind("adc2", 0) == 0) return 0.5;
  return 2.0;
}

bool IsStrainChannel(const std::string& channel) {
  return channel.rfind("adc2", 0) == 0;
}

struct Bump {
  double start_s;  // seconds since start_time
  double scale;    // in sigmas
};

std::vector<Bump> DrawTraffic(const SynthConfig& config, double span_s) {
  std::vector<Bump> bumps;
  if (config.traffic_rate_per_hour <= 0.0 || config.traffic_bump_sigmas <= 0.0) {
    return bumps;
  }
  Rng rng(DeriveSeed(config.seed, kTrafficStream));
  std::exponential_distribution<double> gap(config.traffic_rate_per_hour / 3600.0);
  std::uniform_real_distribution<double> scale(0.5, 1.0);
  double t = gap(rng);
  while (t < span_s) {
    bumps.push_back({t, scale(rng) * config.traffic_bump_sigmas});
    t += gap(rng);
  }
  return bumps;
}

}  // namespace

SynthConfig SynthConfig::Resolved() const {
  SynthConfig c = *this;
  if (c.channels.empty()) c.channels = DefaultChannels();
  const size_t n = c.channels.size();
  std::unordered_set<std::string> names(c.channels.begin(), c.channels.end());
  if (names.size() != n) throw InvalidArgumentError("channels: duplicate name");

  if (c.accident_channels.empty()) c.accident_channels = c.channels;
  for (const auto& a : c.accident_channels) {
    if (!names.count(a)) {
      throw InvalidArgumentError("accident_channels: unknown channel '" + a + "'");
    }
  }
  if (c.noise_sigmas.empty()) {
    for (const auto& ch : c.channels) c.noise_sigmas.push_back(DefaultSigma(ch));
  }
  if (c.baseline_amplitudes.empty()) {
    for (double s : c.noise_sigmas) c.baseline_amplitudes.push_back(0.5 * s);
  }
  if (c.noise_sigmas.size() != n) {
    throw InvalidArgumentError("noise_sigmas: expected one value per channel");
  }
  if (c.baseline_amplitudes.size() != n) {
    throw InvalidArgumentError(
        "baseline_amplitudes: expected one value per channel");
  }
  for (double s : c.noise_sigmas) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw InvalidArgumentError("noise_sigmas: values must be positive");
    }
  }
  for (double a : c.baseline_amplitudes) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw InvalidArgumentError("baseline_amplitudes: values must be positive");
    }
  }
  if (c.days <= 0) throw InvalidArgumentError("days: must be positive");
  if (!(c.sample_rate_hz > 0.0) || !std::isfinite(c.sample_rate_hz)) {
    throw InvalidArgumentError("sample_rate_hz: must be positive");
  }
  if (!(c.spike_magnitude >= 0.0) || !std::isfinite(c.spike_magnitude)) {
    throw InvalidArgumentError("spike_magnitude: must be non-negative");
  }
  if (!(c.strain_shift >= 0.0)) {
    throw InvalidArgumentError("strain_shift: must be non-negative");
  }
  if (c.spike_decay <= Duration::zero()) {
    throw InvalidArgumentError("spike_decay: must be positive");
  }
  if (!(c.traffic_rate_per_hour >= 0.0) || !(c.traffic_bump_sigmas >= 0.0)) {
    throw InvalidArgumentError("traffic: rate and size must be non-negative");
  }
  if (c.traffic_bump_duration <= Duration::zero()) {
    throw InvalidArgumentError("traffic_bump_duration: must be positive");
  }
  const Instant end = c.start_time + std::chrono::days{c.days};
  if (c.accident_time < c.start_time || c.accident_time >= end) {
    throw InvalidArgumentError(
        "accident_time: must lie within [start_time, start_time + days)");
  }
  return c;
}

size_t SyntheticRowCount(const SynthConfig& config) {
  return static_cast<size_t>(
      std::floor(config.days * kSecondsPerDay * config.sample_rate_hz + 1e-9));
}

SyntheticDataset Generate(const SynthConfig& raw_config) {
  const SynthConfig config = raw_config.Resolved();
  const size_t rows = SyntheticRowCount(config);
  const size_t cols = config.channels.size();
  const double span_s = config.days * kSecondsPerDay;

  std::vector<Instant> timestamps(rows);
  std::vector<double> offset_s(rows);
  std::vector<double> day_sin(rows), day_cos(rows);
  const double start_of_day_s = std::fmod(
      static_cast<double>(config.start_time.time_since_epoch().count()) / 1e6,
      kSecondsPerDay);
  for (size_t i = 0; i < rows; ++i) {
    const auto us = std::llround(static_cast<double>(i) * 1e6 /
                                 config.sample_rate_hz);
    timestamps[i] = config.start_time + Duration{us};
    offset_s[i] = static_cast<double>(us) / 1e6;
    const double angle =
        2.0 * std::numbers::pi * (start_of_day_s + offset_s[i]) / kSecondsPerDay;
    day_sin[i] = std::sin(angle);
    day_cos[i] = std::cos(angle);
  }

  const std::vector<Bump> bumps = DrawTraffic(config, span_s);
  const double bump_s = DurationToSeconds(config.traffic_bump_duration);
  const double accident_s = DurationToSeconds(config.accident_time - config.start_time);
  const double decay_s = DurationToSeconds(config.spike_decay);
  const size_t accident_row = static_cast<size_t>(
      std::lower_bound(timestamps.begin(), timestamps.end(), config.accident_time) -
      timestamps.begin());

  // First row at or after `t` seconds from start.
  auto row_at = [&](double t) {
    return static_cast<size_t>(
        std::lower_bound(offset_s.begin(), offset_s.end(), t) - offset_s.begin());
  };

  std::vector<double> values(rows * cols);
  ParallelFor(cols, config.n_jobs, [&](size_t begin, size_t end) {
    for (size_t c = begin; c < end; ++c) {
      const double sigma = config.noise_sigmas[c];
      const double amp = config.baseline_amplitudes[c];
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(c) /
                           static_cast<double>(cols);
      const double sp = std::sin(phase), cp = std::cos(phase);
      Rng rng(DeriveSeed(config.seed, 1 + c));
      std::normal_distribution<double> noise(0.0, sigma);
      for (size_t i = 0; i < rows; ++i) {
        // sin(a + phase) by angle addition.
        values[i * cols + c] =
            amp * (day_sin[i] * cp + day_cos[i] * sp) + noise(rng);
      }
      for (const Bump& b : bumps) {
        for (size_t i = row_at(b.start_s);
             i < rows && offset_s[i] < b.start_s + bump_s; ++i) {
          const double phase_in = (offset_s[i] - b.start_s) / bump_s;
          values[i * cols + c] +=
              b.scale * sigma * std::sin(std::numbers::pi * phase_in);
        }
      }
      const bool hit = std::find(config.accident_channels.begin(),
                                 config.accident_channels.end(),
                                 config.channels[c]) !=
                       config.accident_channels.end();
      if (!hit) continue;
      const double peak = config.spike_magnitude * sigma;
      const double shift =
          IsStrainChannel(config.channels[c]) ? config.strain_shift * sigma : 0.0;
      for (size_t i = accident_row; i < rows; ++i) {
        const double dt = offset_s[i] - accident_s;
        // Beyond 40 e-foldings the transient is below double resolution.
        if (dt < 40.0 * decay_s) values[i * cols + c] += peak * std::exp(-dt / decay_s);
        else if (shift == 0.0) break;
        values[i * cols + c] += shift;
      }
    }
  });

  SyntheticDataset out;
  out.frame = SensorFrame(config.channels, std::move(timestamps), std::move(values));
  out.truth.event_time = config.accident_time;
  return out;
}

SensorFrame InjectMissing(const SensorFrame& frame, double fraction,
                          uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw InvalidArgumentError("missing fraction must lie in [0, 1)");
  }
  std::vector<double> values(frame.values().begin(), frame.values().end());
  if (fraction > 0.0) {
    Rng rng(DeriveSeed(seed, kMissingStream));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& v : values) {
      if (u(rng) < fraction) v = SensorFrame::kMissing;
    }
  }
  return SensorFrame(frame.channels(), frame.timestamps(), std::move(values));
}

}  // namespace bridgewatch
