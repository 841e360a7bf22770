/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitcap
{

enum class ErrorCode
{
  NonUnitQuaternion,
  NonFinite,
  InvalidRotation,
  NonMonotonicTimestamp,
  InvalidConfig,
  MalformedBands,
  MalformedLine,
  MalformedRow,
  DuplicateImageId,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library. `line()` is set for errors raised
/// while parsing a text stream (1-based).
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string& message, std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return m_code; }
  std::optional<std::size_t> line() const noexcept { return m_line; }

  /// Same error with a line number attached (used by the stream parsers).
  Error at_line(std::size_t line) const;

private:
  ErrorCode m_code;
  std::optional<std::size_t> m_line;
  std::string m_bare;
};

} // namespace orbitcap
