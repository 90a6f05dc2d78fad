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

#ifndef BRIDGEWATCH_SYNTHGEN_HPP_
#define BRIDGEWATCH_SYNTHGEN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "bridgewatch/core.hpp"
#include "bridgewatch/time.hpp"

namespace bridgewatch {

// Shape of the synthetic two-device log. Per-channel vectors are indexed
// like `channels`; empty vectors take the defaults (acx noise 8 mG, acy/acz
// 2 mG, adc2 0.5 mV; diurnal amplitude half the noise sigma).
struct SynthConfig {
  Instant start_time = ParseTimestamp("2025-08-15T00:00:00Z");
  int days = 11;
  double sample_rate_hz = 5.0;
  Instant accident_time = ParseTimestamp("2025-08-24T01:15:00Z");
  std::vector<std::string> channels;           // empty: DefaultChannels()
  std::vector<std::string> accident_channels;  // empty: all channels
  std::vector<double> baseline_amplitudes;
  std::vector<double> noise_sigmas;
  // Accident transient peak, in units of each channel's noise sigma.
  double spike_magnitude = 25.0;
  // Persistent shift applied to accident strain channels (adc2_*), in sigmas.
  double strain_shift = 5.0;
  // e-folding time of the accident transient.
  Duration spike_decay = std::chrono::seconds{10};
  // Passing vehicles: Poisson arrivals, half-sine bumps shared by all channels.
  double traffic_rate_per_hour = 20.0;
  double traffic_bump_sigmas = 3.0;
  Duration traffic_bump_duration = std::chrono::seconds{2};
  uint64_t seed = 0;
  // Worker threads for per-channel generation; output does not depend on it.
  int n_jobs = 1;

  // Fills defaulted per-channel vectors and checks every field. Throws
  // InvalidArgument naming the first offending field.
  SynthConfig Resolved() const;
};

struct GroundTruth {
  Instant event_time;
  Duration tolerance = std::chrono::seconds{60};
};

struct SyntheticDataset {
  SensorFrame frame;
  GroundTruth truth;
};

// Number of rows Generate emits: floor(days * 86400 * rate).
size_t SyntheticRowCount(const SynthConfig& config);

// Deterministic in config (including seed), independent of n_jobs.
SyntheticDataset Generate(const SynthConfig& config);

// Marks each cell missing independently with probability `fraction`.
// Deterministic given seed. Throws unless 0 <= fraction < 1.
SensorFrame InjectMissing(const SensorFrame& frame, double fraction,
                          uint64_t seed);

}  // namespace bridgewatch

#endif  // BRIDGEWATCH_SYNTHGEN_HPP_
