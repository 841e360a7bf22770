/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/spherical_grid.hpp"

#include "orbitcap/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orbitcap
{

namespace
{

constexpr double kBandTolerance = 1e-9;

int clamp_index(double scaled, int n)
{
  const double f = std::floor(scaled);
  if (f <= 0.0)
    return 0;
  if (f >= static_cast<double>(n - 1))
    return n - 1;
  return static_cast<int>(f);
}

// Degrees reduced into (-180, 180].
double wrap_deg(double deg)
{
  double d = std::fmod(deg, 360.0);
  if (d <= -180.0)
    d += 360.0;
  else if (d > 180.0)
    d -= 360.0;
  return d;
}

// Positive arc from `from` to `to` in (0, 360].
double arc_deg(double from, double to)
{
  double d = std::fmod(to - from, 360.0);
  if (d <= 0.0)
    d += 360.0;
  return d;
}

double column_center_deg(int t, const GridSpec& spec)
{
  return -180.0 + (t + 0.5) * 360.0 / spec.n_theta;
}

} // namespace

void GridSpec::validate() const
{
  if (n_theta < 2)
    throw Error(ErrorCode::InvalidConfig, "n_theta must be at least 2");
  if (n_phi < 2)
    throw Error(ErrorCode::InvalidConfig, "n_phi must be at least 2");
  if (!(pole_zone_deg >= 0.0 && pole_zone_deg < 90.0))
    throw Error(ErrorCode::InvalidConfig, "pole_zone_deg must be in [0, 90)");
}

bool GridSpec::in_pole_zone(int p) const
{
  const double center_deg = -90.0 + (p + 0.5) * 180.0 / n_phi;
  return std::abs(center_deg) > 90.0 - pole_zone_deg;
}

CellIndex quantize(const SphericalAngles& angles, const GridSpec& spec)
{
  const int t = clamp_index((angles.theta + kPi) / kTwoPi * spec.n_theta, spec.n_theta);
  const int p = clamp_index((angles.phi + kHalfPi) / kPi * spec.n_phi, spec.n_phi);
  return {p, t};
}

SphericalAngles cell_center(const CellIndex& cell, const GridSpec& spec)
{
  return {spec.column_center(cell.t), spec.row_center(cell.p)};
}

double cell_area(int p, const GridSpec& spec)
{
  return spec.d_theta() * (std::sin(spec.row_edge(p + 1)) - std::sin(spec.row_edge(p)));
}

CoverageMatrix::CoverageMatrix(const GridSpec& spec) : m_spec(spec)
{
  m_spec.validate();
  m_bits.assign(m_spec.cell_count(), 0);
}

bool CoverageMatrix::contains(const CellIndex& cell) const
{
  return cell.p >= 0 && cell.p < rows() && cell.t >= 0 && cell.t < cols();
}

std::size_t CoverageMatrix::offset(const CellIndex& cell) const
{
  return static_cast<std::size_t>(cell.p) * static_cast<std::size_t>(cols()) + static_cast<std::size_t>(cell.t);
}

bool CoverageMatrix::set(const CellIndex& cell)
{
  std::uint8_t& bit = m_bits[offset(cell)];
  const bool fresh = bit == 0;
  bit = 1;
  return fresh;
}

std::size_t CoverageMatrix::popcount() const
{
  return static_cast<std::size_t>(std::count(m_bits.begin(), m_bits.end(), std::uint8_t{1}));
}

CoverageMatrix mark(const CoverageMatrix& c, const CellIndex& cell)
{
  CoverageMatrix out = c;
  out.set(cell);
  return out;
}

double coverage_rate(const CoverageMatrix& c)
{
  const GridSpec& spec = c.spec();
  double covered = 0.0;
  double total = 0.0;
  for (int p = 0; p < spec.n_phi; ++p)
  {
    const double area = cell_area(p, spec);
    for (int t = 0; t < spec.n_theta; ++t)
    {
      total += area;
      if (c.test(p, t))
        covered += area;
    }
  }
  return covered / total * 100.0;
}

CoverageMatrix refine_display(const CoverageMatrix& c)
{
  const GridSpec& spec = c.spec();
  const int n_t = spec.n_theta;
  const auto west = [n_t](int t) { return (t + n_t - 1) % n_t; };
  const auto east = [n_t](int t) { return (t + 1) % n_t; };

  CoverageMatrix out = c;

  // Polar rows: grow each active cell along its latitude ring.
  for (int p = 0; p < spec.n_phi; ++p)
  {
    if (!spec.in_pole_zone(p))
      continue;
    for (int t = 0; t < n_t; ++t)
    {
      if (!c.test(p, t))
        continue;
      out.set({p, west(t)});
      out.set({p, east(t)});
    }
  }

  // Holes: all four axial neighbors set. No wrap across the poles.
  for (int p = 1; p + 1 < spec.n_phi; ++p)
  {
    for (int t = 0; t < n_t; ++t)
    {
      if (c.test(p, t))
        continue;
      if (c.test(p, west(t)) && c.test(p, east(t)) && c.test(p - 1, t) && c.test(p + 1, t))
        out.set({p, t});
    }
  }
  return out;
}

double ThetaBand::width_deg() const
{
  return arc_deg(start_deg, end_deg);
}

bool ThetaBand::contains_deg(double theta_deg) const
{
  // Plain comparisons, no subtraction: neighbours sharing an edge value
  // must agree on which of them owns a point next to it.
  const double start = wrap_deg(start_deg);
  const double end = wrap_deg(end_deg);
  const double x = wrap_deg(theta_deg);
  if (start == end)
    return true;
  if (start < end)
    return x > start && x <= end;
  return x > start || x <= end;
}

std::vector<ThetaBand> default_bands()
{
  return {{-45.0, 45.0}, {45.0, 135.0}, {135.0, -135.0}, {-135.0, -45.0}};
}

void validate_bands(std::span<const ThetaBand> bands)
{
  if (bands.empty())
    throw Error(ErrorCode::MalformedBands, "no bands given");

  std::vector<ThetaBand> sorted;
  double total = 0.0;
  for (const ThetaBand& band : bands)
  {
    if (!std::isfinite(band.start_deg) || !std::isfinite(band.end_deg))
      throw Error(ErrorCode::MalformedBands, "band edges must be finite");
    sorted.push_back({wrap_deg(band.start_deg), wrap_deg(band.end_deg)});
    total += band.width_deg();
  }

  if (std::abs(total - 360.0) > kBandTolerance)
  {
    throw Error(ErrorCode::MalformedBands,
                "band widths sum to " + std::to_string(total) + " degrees; expected 360 (overlap or gap)");
  }

  std::sort(sorted.begin(), sorted.end(), [](const ThetaBand& a, const ThetaBand& b) { return a.start_deg < b.start_deg; });
  for (std::size_t i = 0; i < sorted.size(); ++i)
  {
    const ThetaBand& next = sorted[(i + 1) % sorted.size()];
    const double gap = std::abs(wrap_deg(next.start_deg - sorted[i].end_deg));
    if (gap > kBandTolerance)
    {
      throw Error(ErrorCode::MalformedBands, "band ending at " + std::to_string(sorted[i].end_deg) +
                                                 " is not followed by a band starting there");
    }
  }
}

BandReport band_report(std::span<const SphericalAngles> captures, std::span<const ThetaBand> bands,
                       const CoverageMatrix& c)
{
  validate_bands(bands);

  const GridSpec& spec = c.spec();
  BandReport report;
  report.reserve(bands.size());

  for (const ThetaBand& band : bands)
  {
    BandRecord record;
    record.band = band;

    for (const SphericalAngles& capture : captures)
    {
      if (band.contains_deg(rad_to_deg(capture.theta)))
        ++record.image_count;
    }

    double covered = 0.0;
    double total = 0.0;
    for (int p = 0; p < spec.n_phi; ++p)
    {
      const double area = cell_area(p, spec);
      for (int t = 0; t < spec.n_theta; ++t)
      {
        if (!band.contains_deg(column_center_deg(t, spec)))
          continue;
        total += area;
        if (c.test(p, t))
          covered += area;
      }
    }
    record.coverage_pct = total > 0.0 ? covered / total * 100.0 : 0.0;
    report.push_back(record);
  }
  return report;
}

} // namespace orbitcap
