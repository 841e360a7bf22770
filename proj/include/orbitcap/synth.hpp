/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "orbitcap/stability_gate.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace orbitcap
{

enum class SynthPattern
{
  Orbit,      // yaw sweep at a fixed latitude
  Spiral,     // yaw turns while latitude ramps from the south to the north pole
  RandomWalk, // bounded-rate random yaw/pitch motion
};

std::string_view to_string(SynthPattern pattern);
SynthPattern parse_synth_pattern(std::string_view text);

/// Every trajectory starts with a calm hold at yaw = pitch = 0, so the
/// session baseline is the identity and relative angles equal the
/// generated ones.
struct SynthParams
{
  SynthPattern pattern{SynthPattern::Orbit};
  double rate_hz{50.0};
  double yaw_rate_deg{15.0}; // deg/s for orbit/spiral, bound for random-walk
  double settle_ms{600.0};

  double phi_deg{0.0};     // orbit latitude
  double sweep_deg{365.0}; // orbit yaw travel
  double turns{24.0};      // spiral revolutions
  double duration_s{120.0}; // random-walk motion time

  double noise_a{0.0}; // std dev of additive accel noise, m/s^2
  double noise_w{0.0}; // std dev of additive gyro noise, rad/s

  int bursts{0};
  double burst_ms{1500.0};
  double burst_accel{5.0}; // m/s^2 magnitude during a burst

  std::uint64_t seed{1};

  /// Throws InvalidConfig.
  void validate() const;
};

struct BurstInterval
{
  TimestampMs start_ms{0};
  TimestampMs end_ms{0}; // exclusive
};

struct SynthResult
{
  std::vector<ImuSample> samples;
  std::vector<BurstInterval> bursts;
};

SynthResult synthesize(const SynthParams& params);

/// Quaternion whose forward axis points at longitude `theta`, latitude `phi`.
Quaternion look_quaternion(double theta, double phi);

} // namespace orbitcap
