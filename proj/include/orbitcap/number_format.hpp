/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <charconv>
#include <string>
#include <string_view>

namespace orbitcap
{

/// Shortest decimal that parses back to the same double. Always contains a
/// '.' or exponent so the value reads back as floating point (keeps -0.0).
inline std::string format_double(double value)
{
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  std::string out(buf, result.ptr);
  if (out.find_first_of(".eEn") == std::string::npos)
    out += ".0";
  return out;
}

} // namespace orbitcap
