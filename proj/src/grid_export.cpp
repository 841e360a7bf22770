/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/spherical_grid.hpp"

#include "orbitcap/number_format.hpp"

#include <ostream>

namespace orbitcap
{

void write_pgm(std::ostream& out, const CoverageMatrix& raw, const CoverageMatrix* refined)
{
  out << "P5\n" << raw.cols() << ' ' << raw.rows() << "\n255\n";
  for (int p = raw.rows() - 1; p >= 0; --p)
  {
    for (int t = 0; t < raw.cols(); ++t)
    {
      unsigned char value = 0;
      if (raw.test(p, t))
        value = 255;
      else if (refined != nullptr && refined->test(p, t))
        value = 128;
      out.put(static_cast<char>(value));
    }
  }
}

void write_matrix_text(std::ostream& out, const CoverageMatrix& c)
{
  for (int p = c.rows() - 1; p >= 0; --p)
  {
    for (int t = 0; t < c.cols(); ++t)
      out.put(c.test(p, t) ? '1' : '0');
    out.put('\n');
  }
}

std::string to_bit_string(const CoverageMatrix& c)
{
  std::string bits;
  bits.reserve(c.bits().size());
  for (std::uint8_t b : c.bits())
    bits.push_back(b != 0 ? '1' : '0');
  return bits;
}

void write_band_csv(std::ostream& out, const BandReport& report)
{
  out << "band_start_deg,band_end_deg,image_count,coverage_pct\n";
  for (const BandRecord& record : report)
  {
    out << format_double(record.band.start_deg) << ',' << format_double(record.band.end_deg) << ','
        << record.image_count << ',' << format_double(record.coverage_pct) << '\n';
  }
}

} // namespace orbitcap
