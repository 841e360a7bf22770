/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "orbitcap/core_math.hpp"
#include "orbitcap/spherical_grid.hpp"
#include "orbitcap/stability_gate.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace orbitcap
{

enum class RecapturePolicy
{
  Once,   // capture only when the cell is newly covered
  Always, // capture on every stable sample after the baseline
};

std::string_view to_string(RecapturePolicy policy);
RecapturePolicy parse_recapture_policy(std::string_view text);

struct SessionConfig
{
  GateConfig gate;
  GridSpec grid;
  RecapturePolicy recapture{RecapturePolicy::Once};

  void validate() const;

  bool operator==(const SessionConfig&) const = default;
};

struct CaptureEvent
{
  TimestampMs t_ms{0};
  SphericalAngles angles;
  CellIndex cell;
  bool newly_covered{false};
  double coverage_after{0.0};

  bool operator==(const CaptureEvent&) const = default;
};

struct GuidanceHint
{
  CellIndex target_cell;
  SphericalAngles target_angles;
  double yaw_delta{0.0};   // radians, wrapped into (-pi, pi]
  double pitch_delta{0.0}; // radians
  double uncovered_area_pct{0.0};

  bool operator==(const GuidanceHint&) const = default;
};

/// Everything one acquisition run accumulates. Owned by a single writer.
struct SessionState
{
  explicit SessionState(const SessionConfig& cfg);

  std::optional<RotationMatrix> baseline;
  GateState gate;
  CoverageMatrix coverage;
  std::vector<CaptureEvent> captures;
  std::size_t sample_count{0};

  /// Pose of the latest stable sample, once the baseline exists.
  std::optional<SphericalAngles> current_angles;
  std::optional<CellIndex> current_cell;

  /// Row-major, one entry per cell.
  std::vector<std::optional<TimestampMs>> first_visit;
};

/// Result of one ingest step, for callers that report per-sample state.
struct IngestResult
{
  std::optional<CaptureEvent> capture;
  bool baseline_set{false};
  bool newly_covered{false};
};

/**
 * Run one sample through the pipeline: gate, then (only when stable)
 * baseline capture or relative pose, spherical angles, and grid marking.
 * Throws NonMonotonicTimestamp and the quaternion errors of quat_to_dcm.
 */
IngestResult session_ingest(SessionState& state, const ImuSample& sample, const SessionConfig& cfg);

/// Nearest uncovered cell by great-circle distance from the current view.
/// Ties prefer the larger cell, then the smaller (p, t). Empty without a
/// baseline or at full coverage.
std::optional<GuidanceHint> guidance(const SessionState& state);

struct Snapshot
{
  double coverage_pct{0.0};
  CoverageMatrix raw;
  CoverageMatrix refined;
  std::size_t capture_count{0};
  GateStatus gate_status{GateStatus::Warmup};
};

Snapshot snapshot(const SessionState& state);

struct FirstVisit
{
  CellIndex cell;
  TimestampMs t_ms{0};

  bool operator==(const FirstVisit&) const = default;
};

struct SessionReport
{
  SessionConfig config;
  std::size_t sample_count{0};
  double coverage_pct{0.0};
  std::vector<CaptureEvent> captures;
  BandReport bands;
  std::vector<FirstVisit> first_visits;
  CoverageMatrix coverage;

  bool operator==(const SessionReport&) const = default;
};

SessionReport finalize(const SessionState& state, const SessionConfig& cfg);

/// Convenience: a fresh session over a whole sample sequence.
SessionReport replay_samples(const std::vector<ImuSample>& samples, const SessionConfig& cfg);

/// Offline analysis of already-accepted image orientations (no gating).
struct OrientationCoverage
{
  CoverageMatrix coverage;
  std::vector<SphericalAngles> angles;
  BandReport bands;
  double coverage_pct{0.0};
};

/// Orientations are taken as object-centered unless `first_is_baseline`,
/// in which case they are expressed relative to the first one.
OrientationCoverage orientation_coverage(std::span<const Quaternion> orientations, const GridSpec& grid,
                                         bool first_is_baseline = false);

} // namespace orbitcap
