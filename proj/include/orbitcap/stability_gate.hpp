/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "orbitcap/core_math.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace orbitcap
{

using TimestampMs = std::int64_t;

/// One rotation-vector / accelerometer / gyroscope reading.
struct ImuSample
{
  TimestampMs t_ms{0};
  Quaternion q;
  std::array<double, 3> accel{}; // m/s^2, gravity removed
  std::array<double, 3> gyro{};  // rad/s

  bool operator==(const ImuSample&) const = default;
};

double accel_magnitude(const ImuSample& s);
double gyro_magnitude(const ImuSample& s);

/// Defaults are tuning choices for handheld phones, not published values.
struct GateConfig
{
  double alpha{0.9};
  double a_th{0.5};     // m/s^2
  double omega_th{0.3}; // rad/s
  TimestampMs hold_ms{300};

  /// Throws InvalidConfig unless thresholds are positive and alpha in [0, 1).
  void validate() const;

  bool operator==(const GateConfig&) const = default;
};

enum class GateStatus
{
  Warmup,   // calm, hold window not yet elapsed
  Unstable, // a smoothed magnitude is above its threshold
  Stable,
};

std::string_view to_string(GateStatus status);

/**
 * EMA-smoothed motion magnitudes plus the calm-streak bookkeeping.
 *
 * A default-constructed state is unseeded: the first sample sets the
 * averages directly to its magnitudes. `seeded` starts from explicit values.
 */
struct GateState
{
  double a_hat{0.0};
  double omega_hat{0.0};
  bool seeded{false};
  std::optional<TimestampMs> below_since;
  std::optional<TimestampMs> last_t_ms;
  GateStatus status{GateStatus::Warmup};

  static GateState seeded_with(double a_hat, double omega_hat);

  bool operator==(const GateState&) const = default;
};

/// Advance the gate by one sample. Throws NonMonotonicTimestamp if the
/// sample is not strictly after the previous one.
GateState gate_update(const GateState& state, const ImuSample& sample, const GateConfig& cfg);

/// Drop the averages and the calm streak. The last timestamp is kept so the
/// stream stays monotonic across a reset.
GateState gate_reset(const GateState& state);

} // namespace orbitcap
