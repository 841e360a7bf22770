/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/stability_gate.hpp"

#include "orbitcap/error.hpp"

#include <cmath>
#include <string>

namespace orbitcap
{

double accel_magnitude(const ImuSample& s)
{
  return std::sqrt(s.accel[0] * s.accel[0] + s.accel[1] * s.accel[1] + s.accel[2] * s.accel[2]);
}

double gyro_magnitude(const ImuSample& s)
{
  return std::sqrt(s.gyro[0] * s.gyro[0] + s.gyro[1] * s.gyro[1] + s.gyro[2] * s.gyro[2]);
}

void GateConfig::validate() const
{
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw Error(ErrorCode::InvalidConfig, "alpha must be in [0, 1)");
  if (!(a_th > 0.0) || !std::isfinite(a_th))
    throw Error(ErrorCode::InvalidConfig, "a_th must be positive");
  if (!(omega_th > 0.0) || !std::isfinite(omega_th))
    throw Error(ErrorCode::InvalidConfig, "omega_th must be positive");
  if (hold_ms <= 0)
    throw Error(ErrorCode::InvalidConfig, "hold_ms must be positive");
}

std::string_view to_string(GateStatus status)
{
  switch (status)
  {
    case GateStatus::Warmup:
      return "warmup";
    case GateStatus::Unstable:
      return "unstable";
    case GateStatus::Stable:
      return "stable";
  }
  return "unknown";
}

GateState GateState::seeded_with(double a_hat, double omega_hat)
{
  GateState state;
  state.a_hat = a_hat;
  state.omega_hat = omega_hat;
  state.seeded = true;
  return state;
}

GateState gate_update(const GateState& state, const ImuSample& sample, const GateConfig& cfg)
{
  if (state.last_t_ms && sample.t_ms <= *state.last_t_ms)
  {
    throw Error(ErrorCode::NonMonotonicTimestamp, "timestamp " + std::to_string(sample.t_ms) +
                                                      " does not follow " + std::to_string(*state.last_t_ms));
  }

  const double a_mag = accel_magnitude(sample);
  const double w_mag = gyro_magnitude(sample);
  if (!std::isfinite(a_mag) || !std::isfinite(w_mag))
    throw Error(ErrorCode::NonFinite, "motion magnitudes are not finite");

  GateState next = state;
  next.last_t_ms = sample.t_ms;

  if (!state.seeded)
  {
    next.a_hat = a_mag;
    next.omega_hat = w_mag;
    next.seeded = true;
  }
  else
  {
    next.a_hat = cfg.alpha * state.a_hat + (1.0 - cfg.alpha) * a_mag;
    next.omega_hat = cfg.alpha * state.omega_hat + (1.0 - cfg.alpha) * w_mag;
  }

  if (next.a_hat > cfg.a_th || next.omega_hat > cfg.omega_th)
  {
    next.below_since.reset();
    next.status = GateStatus::Unstable;
    return next;
  }

  if (!next.below_since)
    next.below_since = sample.t_ms;
  next.status = (sample.t_ms - *next.below_since >= cfg.hold_ms) ? GateStatus::Stable : GateStatus::Warmup;
  return next;
}

GateState gate_reset(const GateState& state)
{
  GateState fresh;
  fresh.last_t_ms = state.last_t_ms;
  return fresh;
}

} // namespace orbitcap
