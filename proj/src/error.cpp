/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/error.hpp"

namespace orbitcap
{

std::string_view to_string(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::NonUnitQuaternion:
      return "NonUnitQuaternion";
    case ErrorCode::NonFinite:
      return "NonFinite";
    case ErrorCode::InvalidRotation:
      return "InvalidRotation";
    case ErrorCode::NonMonotonicTimestamp:
      return "NonMonotonicTimestamp";
    case ErrorCode::InvalidConfig:
      return "InvalidConfig";
    case ErrorCode::MalformedBands:
      return "MalformedBands";
    case ErrorCode::MalformedLine:
      return "MalformedLine";
    case ErrorCode::MalformedRow:
      return "MalformedRow";
    case ErrorCode::DuplicateImageId:
      return "DuplicateImageId";
  }
  return "Unknown";
}

namespace
{

std::string compose(ErrorCode code, const std::string& message, std::optional<std::size_t> line)
{
  std::string out(to_string(code));
  if (line)
    out += " at line " + std::to_string(*line);
  out += ": ";
  out += message;
  return out;
}

} // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> line)
  : std::runtime_error(compose(code, message, line)), m_code(code), m_line(line), m_bare(message)
{
}

Error Error::at_line(std::size_t line) const
{
  return Error(m_code, m_bare, line);
}

} // namespace orbitcap
