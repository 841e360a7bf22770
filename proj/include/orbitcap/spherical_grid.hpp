/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "orbitcap/core_math.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace orbitcap
{

/// Longitude-latitude discretization of the viewing sphere.
struct GridSpec
{
  int n_theta{36};
  int n_phi{18};
  double pole_zone_deg{30.0};

  void validate() const;

  double d_theta() const { return kTwoPi / n_theta; }
  double d_phi() const { return kPi / n_phi; }

  /// Lower latitude edge of row p: -pi/2 + p * d_phi.
  double row_edge(int p) const { return -kHalfPi + p * d_phi(); }
  double row_center(int p) const { return -kHalfPi + (p + 0.5) * d_phi(); }
  double column_center(int t) const { return -kPi + (t + 0.5) * d_theta(); }

  /// Rows whose band center is within `pole_zone_deg` of a pole.
  bool in_pole_zone(int p) const;

  std::size_t cell_count() const { return static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi); }

  bool operator==(const GridSpec&) const = default;
};

struct CellIndex
{
  int p{0}; // latitude row, 0 at the south pole
  int t{0}; // longitude column, 0 at theta = -pi

  bool operator==(const CellIndex&) const = default;
  auto operator<=>(const CellIndex&) const = default;
};

/// Floor/clamp quantization of normalized angles into grid indices.
CellIndex quantize(const SphericalAngles& angles, const GridSpec& spec);

/// Center of a cell as angles.
SphericalAngles cell_center(const CellIndex& cell, const GridSpec& spec);

/// Exact spherical area of any cell in row p (steradians).
double cell_area(int p, const GridSpec& spec);

/// Binary occupancy grid, row-major with n_phi rows of n_theta columns.
class CoverageMatrix
{
public:
  CoverageMatrix() : CoverageMatrix(GridSpec{}) {}
  explicit CoverageMatrix(const GridSpec& spec);

  const GridSpec& spec() const { return m_spec; }
  int rows() const { return m_spec.n_phi; }
  int cols() const { return m_spec.n_theta; }

  bool contains(const CellIndex& cell) const;
  bool test(const CellIndex& cell) const { return m_bits[offset(cell)] != 0; }
  bool test(int p, int t) const { return test(CellIndex{p, t}); }

  /// Sets the bit. Returns true when it was previously clear.
  bool set(const CellIndex& cell);

  std::size_t popcount() const;
  std::span<const std::uint8_t> bits() const { return m_bits; }

  bool operator==(const CoverageMatrix&) const = default;

private:
  std::size_t offset(const CellIndex& cell) const;

  GridSpec m_spec;
  std::vector<std::uint8_t> m_bits;
};

/// Copy of `c` with `cell` marked.
CoverageMatrix mark(const CoverageMatrix& c, const CellIndex& cell);

/// Area-weighted coverage in percent, summed over every row.
double coverage_rate(const CoverageMatrix& c);

/// Display copy with polar longitudinal dilation and hole filling applied.
/// Both rules read the input only, so the result is order independent.
CoverageMatrix refine_display(const CoverageMatrix& c);

/// Longitude sector (start_deg, end_deg]. A band with end <= start wraps
/// through +-180.
struct ThetaBand
{
  double start_deg{0.0};
  double end_deg{0.0};

  double width_deg() const;
  bool contains_deg(double theta_deg) const;

  bool operator==(const ThetaBand&) const = default;
};

/// Front, side, back, and opposite side sectors.
std::vector<ThetaBand> default_bands();

/// Throws MalformedBands unless the bands tile the circle without gaps or
/// overlaps.
void validate_bands(std::span<const ThetaBand> bands);

struct BandRecord
{
  ThetaBand band;
  std::size_t image_count{0};
  double coverage_pct{0.0};

  bool operator==(const BandRecord&) const = default;
};

using BandReport = std::vector<BandRecord>;

/// Capture counts by capture longitude, and coverage restricted to the
/// columns whose center falls in each band.
BandReport band_report(std::span<const SphericalAngles> captures, std::span<const ThetaBand> bands,
                       const CoverageMatrix& c);

/// Binary PGM (P5), one pixel per cell, row p = 0 at the bottom. Raw cells
/// are 255, cells only present in `refined` are 128.
void write_pgm(std::ostream& out, const CoverageMatrix& raw, const CoverageMatrix* refined = nullptr);

/// One line per row, north row first, '1'/'0' per cell.
void write_matrix_text(std::ostream& out, const CoverageMatrix& c);

/// Row-major bit string, row p = 0 first.
std::string to_bit_string(const CoverageMatrix& c);

void write_band_csv(std::ostream& out, const BandReport& report);

} // namespace orbitcap
