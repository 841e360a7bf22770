/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/session.hpp"

#include "orbitcap/error.hpp"

#include <cmath>
#include <string>

namespace orbitcap
{

namespace
{

// Distances and areas closer than this are treated as ties.
constexpr double kTieTolerance = 1e-12;

double great_circle(const Eigen::Vector3d& a, const Eigen::Vector3d& b)
{
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

std::size_t cell_offset(const CellIndex& cell, const GridSpec& spec)
{
  return static_cast<std::size_t>(cell.p) * static_cast<std::size_t>(spec.n_theta) + static_cast<std::size_t>(cell.t);
}

} // namespace

std::string_view to_string(RecapturePolicy policy)
{
  return policy == RecapturePolicy::Once ? "once" : "always";
}

RecapturePolicy parse_recapture_policy(std::string_view text)
{
  if (text == "once")
    return RecapturePolicy::Once;
  if (text == "always")
    return RecapturePolicy::Always;
  throw Error(ErrorCode::InvalidConfig, "recapture policy must be 'once' or 'always', got '" + std::string(text) + "'");
}

void SessionConfig::validate() const
{
  gate.validate();
  grid.validate();
}

SessionState::SessionState(const SessionConfig& cfg)
  : coverage(cfg.grid), first_visit(cfg.grid.cell_count())
{
}

IngestResult session_ingest(SessionState& state, const ImuSample& sample, const SessionConfig& cfg)
{
  GateState gate = gate_update(state.gate, sample, cfg.gate);

  IngestResult result;
  if (gate.status != GateStatus::Stable)
  {
    state.gate = gate;
    ++state.sample_count;
    return result;
  }

  const RotationMatrix pose = quat_to_dcm(sample.q);
  state.gate = gate;
  ++state.sample_count;

  if (!state.baseline)
  {
    state.baseline = pose;
    state.current_angles = SphericalAngles{0.0, 0.0};
    state.current_cell = quantize(*state.current_angles, cfg.grid);
    result.baseline_set = true;
    return result;
  }

  const RotationMatrix rel = relative_rotation(*state.baseline, pose);
  const SphericalAngles angles = normalize_angles(to_spherical(view_direction(rel)));
  const CellIndex cell = quantize(angles, cfg.grid);

  const bool fresh = state.coverage.set(cell);
  if (fresh)
    state.first_visit[cell_offset(cell, cfg.grid)] = sample.t_ms;

  state.current_angles = angles;
  state.current_cell = cell;
  result.newly_covered = fresh;

  if (fresh || cfg.recapture == RecapturePolicy::Always)
  {
    CaptureEvent event{sample.t_ms, angles, cell, fresh, coverage_rate(state.coverage)};
    state.captures.push_back(event);
    result.capture = event;
  }
  return result;
}

std::optional<GuidanceHint> guidance(const SessionState& state)
{
  if (!state.baseline || !state.current_angles)
    return std::nullopt;

  const CoverageMatrix& cov = state.coverage;
  const GridSpec& spec = cov.spec();
  if (cov.popcount() == spec.cell_count())
    return std::nullopt;

  const Eigen::Vector3d here = from_spherical(*state.current_angles).vector();

  std::optional<CellIndex> best;
  double best_dist = 0.0;
  double best_area = 0.0;
  for (int p = 0; p < spec.n_phi; ++p)
  {
    const double area = cell_area(p, spec);
    for (int t = 0; t < spec.n_theta; ++t)
    {
      if (cov.test(p, t))
        continue;
      const double dist = great_circle(here, from_spherical(cell_center({p, t}, spec)).vector());

      bool better = !best || dist < best_dist - kTieTolerance;
      if (!better && std::abs(dist - best_dist) <= kTieTolerance)
        better = area > best_area + kTieTolerance;
      if (better)
      {
        best = CellIndex{p, t};
        best_dist = dist;
        best_area = area;
      }
    }
  }

  GuidanceHint hint;
  hint.target_cell = *best;
  hint.target_angles = cell_center(*best, spec);
  hint.yaw_delta = wrap_theta(hint.target_angles.theta - state.current_angles->theta);
  hint.pitch_delta = hint.target_angles.phi - state.current_angles->phi;
  hint.uncovered_area_pct = 100.0 - coverage_rate(cov);
  return hint;
}

Snapshot snapshot(const SessionState& state)
{
  Snapshot snap;
  snap.coverage_pct = coverage_rate(state.coverage);
  snap.raw = state.coverage;
  snap.refined = refine_display(state.coverage);
  snap.capture_count = state.captures.size();
  snap.gate_status = state.gate.status;
  return snap;
}

SessionReport finalize(const SessionState& state, const SessionConfig& cfg)
{
  SessionReport report;
  report.config = cfg;
  report.sample_count = state.sample_count;
  report.coverage_pct = coverage_rate(state.coverage);
  report.captures = state.captures;
  report.coverage = state.coverage;

  std::vector<SphericalAngles> angles;
  angles.reserve(state.captures.size());
  for (const CaptureEvent& event : state.captures)
    angles.push_back(event.angles);
  const std::vector<ThetaBand> bands = default_bands();
  report.bands = band_report(angles, bands, state.coverage);

  for (int p = 0; p < cfg.grid.n_phi; ++p)
  {
    for (int t = 0; t < cfg.grid.n_theta; ++t)
    {
      const CellIndex cell{p, t};
      if (const auto& visit = state.first_visit[cell_offset(cell, cfg.grid)])
        report.first_visits.push_back({cell, *visit});
    }
  }
  return report;
}

SessionReport replay_samples(const std::vector<ImuSample>& samples, const SessionConfig& cfg)
{
  cfg.validate();
  SessionState state(cfg);
  for (const ImuSample& sample : samples)
    session_ingest(state, sample, cfg);
  return finalize(state, cfg);
}

OrientationCoverage orientation_coverage(std::span<const Quaternion> orientations, const GridSpec& grid,
                                         bool first_is_baseline)
{
  OrientationCoverage out{CoverageMatrix(grid), {}, {}, 0.0};

  RotationMatrix baseline;
  if (first_is_baseline && !orientations.empty())
    baseline = quat_to_dcm(orientations.front());

  for (const Quaternion& q : orientations)
  {
    const RotationMatrix rel = relative_rotation(baseline, quat_to_dcm(q));
    const SphericalAngles angles = normalize_angles(to_spherical(view_direction(rel)));
    out.coverage.set(quantize(angles, grid));
    out.angles.push_back(angles);
  }

  const std::vector<ThetaBand> bands = default_bands();
  out.bands = band_report(out.angles, bands, out.coverage);
  out.coverage_pct = coverage_rate(out.coverage);
  return out;
}

} // namespace orbitcap
