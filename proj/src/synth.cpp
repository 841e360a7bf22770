/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/synth.hpp"

#include "orbitcap/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Geometry>

namespace orbitcap
{

namespace
{

constexpr double kWalkPitchLimitDeg = 80.0;

class Generator
{
public:
  explicit Generator(const SynthParams& params)
    : m_params(params), m_dt_ms(1000.0 / params.rate_hz), m_rng(params.seed)
  {
  }

  double dt_s() const { return m_dt_ms / 1000.0; }
  TimestampMs next_time() const { return std::llround(static_cast<double>(m_index) * m_dt_ms); }

  void emit(double theta, double phi, double theta_rate, double phi_rate)
  {
    ImuSample s;
    s.t_ms = next_time();
    s.q = look_quaternion(theta, phi);

    const Eigen::Vector3d world_rate = theta_rate * Eigen::Vector3d::UnitY() +
                                       Eigen::AngleAxisd(theta, Eigen::Vector3d::UnitY()) *
                                           (-phi_rate * Eigen::Vector3d::UnitX());
    const Eigen::Vector3d body_rate = quat_to_dcm(s.q).matrix().transpose() * world_rate;
    for (int i = 0; i < 3; ++i)
      s.gyro[static_cast<std::size_t>(i)] = body_rate[i];

    if (m_params.noise_a > 0.0)
    {
      std::normal_distribution<double> noise(0.0, m_params.noise_a);
      for (double& a : s.accel)
        a += noise(m_rng);
    }
    if (m_params.noise_w > 0.0)
    {
      std::normal_distribution<double> noise(0.0, m_params.noise_w);
      for (double& w : s.gyro)
        w += noise(m_rng);
    }

    m_samples.push_back(s);
    m_theta = theta;
    m_phi = phi;
    ++m_index;
  }

  void hold(double duration_ms)
  {
    const auto n = static_cast<long>(std::ceil(duration_ms / m_dt_ms));
    for (long i = 0; i < n; ++i)
      emit(m_theta, m_phi, 0.0, 0.0);
  }

  // Linear move to (theta_end, phi_end) with the larger axis at `rate` rad/s.
  void ramp(double theta_end, double phi_end, double rate)
  {
    const double d_theta = theta_end - m_theta;
    const double d_phi = phi_end - m_phi;
    const double travel = std::max(std::abs(d_theta), std::abs(d_phi));
    if (travel == 0.0)
      return;

    const auto n = static_cast<long>(std::ceil(travel / (rate * dt_s())));
    const double theta0 = m_theta;
    const double phi0 = m_phi;
    const double duration = static_cast<double>(n) * dt_s();
    for (long i = 1; i <= n; ++i)
    {
      const double f = static_cast<double>(i) / static_cast<double>(n);
      emit(theta0 + d_theta * f, phi0 + d_phi * f, d_theta / duration, d_phi / duration);
    }
  }

  void random_walk(double duration_s, double max_rate)
  {
    std::normal_distribution<double> jerk(0.0, max_rate * 0.15);
    const double limit = deg_to_rad(kWalkPitchLimitDeg);
    double theta_rate = 0.0;
    double phi_rate = 0.0;

    const auto n = static_cast<long>(std::ceil(duration_s / dt_s()));
    for (long i = 0; i < n; ++i)
    {
      theta_rate += jerk(m_rng);
      phi_rate += jerk(m_rng);
      const double speed = std::hypot(theta_rate, phi_rate);
      if (speed > max_rate)
      {
        theta_rate *= max_rate / speed;
        phi_rate *= max_rate / speed;
      }

      double phi = m_phi + phi_rate * dt_s();
      if (std::abs(phi) > limit)
      {
        phi_rate = -phi_rate;
        phi = std::clamp(phi, -limit, limit);
      }
      emit(m_theta + theta_rate * dt_s(), phi, theta_rate, phi_rate);
    }
  }

  TimestampMs last_time() const { return m_samples.empty() ? 0 : m_samples.back().t_ms; }

  SynthResult finish()
  {
    SynthResult result;
    result.samples = std::move(m_samples);
    return result;
  }

private:
  SynthParams m_params;
  double m_dt_ms;
  std::mt19937_64 m_rng;
  std::vector<ImuSample> m_samples;
  long m_index{0};
  double m_theta{0.0};
  double m_phi{0.0};
};

void inject_bursts(SynthResult& result, const SynthParams& params, TimestampMs motion_start, TimestampMs motion_end)
{
  if (params.bursts <= 0)
    return;

  const double span = static_cast<double>(motion_end - motion_start);
  for (int i = 0; i < params.bursts; ++i)
  {
    const double center = static_cast<double>(motion_start) + span * (i + 1) / (params.bursts + 1);
    BurstInterval burst{std::llround(center - params.burst_ms / 2.0), std::llround(center + params.burst_ms / 2.0)};
    result.bursts.push_back(burst);
  }

  for (ImuSample& s : result.samples)
  {
    for (const BurstInterval& burst : result.bursts)
    {
      if (s.t_ms >= burst.start_ms && s.t_ms < burst.end_ms)
        s.accel[0] += params.burst_accel;
    }
  }
}

} // namespace

std::string_view to_string(SynthPattern pattern)
{
  switch (pattern)
  {
    case SynthPattern::Orbit:
      return "orbit";
    case SynthPattern::Spiral:
      return "spiral";
    case SynthPattern::RandomWalk:
      return "random-walk";
  }
  return "unknown";
}

SynthPattern parse_synth_pattern(std::string_view text)
{
  if (text == "orbit")
    return SynthPattern::Orbit;
  if (text == "spiral")
    return SynthPattern::Spiral;
  if (text == "random-walk")
    return SynthPattern::RandomWalk;
  throw Error(ErrorCode::InvalidConfig, "unknown pattern '" + std::string(text) + "'");
}

void SynthParams::validate() const
{
  const auto require = [](bool ok, const char* message) {
    if (!ok)
      throw Error(ErrorCode::InvalidConfig, message);
  };
  require(rate_hz > 0.0 && rate_hz <= 1000.0, "rate must be in (0, 1000] Hz");
  require(yaw_rate_deg > 0.0 && std::isfinite(yaw_rate_deg), "yaw rate must be positive");
  require(settle_ms >= 0.0 && std::isfinite(settle_ms), "settle time must be non-negative");
  require(phi_deg > -90.0 && phi_deg <= 90.0, "orbit latitude must be in (-90, 90]");
  require(sweep_deg > 0.0 && std::isfinite(sweep_deg), "sweep must be positive");
  require(turns > 0.0 && std::isfinite(turns), "turns must be positive");
  require(duration_s > 0.0 && std::isfinite(duration_s), "duration must be positive");
  require(noise_a >= 0.0 && noise_w >= 0.0, "noise levels must be non-negative");
  require(bursts >= 0, "burst count must be non-negative");
  require(burst_ms > 0.0 && burst_accel >= 0.0, "burst length must be positive and magnitude non-negative");
}

Quaternion look_quaternion(double theta, double phi)
{
  const Quaternion yaw{0.0, std::sin(theta / 2.0), 0.0, std::cos(theta / 2.0)};
  const Quaternion pitch{std::sin(-phi / 2.0), 0.0, 0.0, std::cos(phi / 2.0)};
  return multiply(yaw, pitch);
}

SynthResult synthesize(const SynthParams& params)
{
  params.validate();

  Generator gen(params);
  const double rate = deg_to_rad(params.yaw_rate_deg);

  gen.hold(params.settle_ms);
  const TimestampMs motion_start = gen.next_time();

  switch (params.pattern)
  {
    case SynthPattern::Orbit:
      gen.ramp(0.0, deg_to_rad(params.phi_deg), rate);
      gen.ramp(deg_to_rad(params.sweep_deg), deg_to_rad(params.phi_deg), rate);
      break;
    case SynthPattern::Spiral:
      gen.ramp(0.0, -kHalfPi, rate);
      gen.ramp(kTwoPi * params.turns, kHalfPi, rate);
      break;
    case SynthPattern::RandomWalk:
      gen.random_walk(params.duration_s, rate);
      break;
  }

  const TimestampMs motion_end = gen.last_time();
  SynthResult result = gen.finish();
  inject_bursts(result, params, motion_start, motion_end);
  return result;
}

} // namespace orbitcap
