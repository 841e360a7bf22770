/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "orbitcap/stability_gate.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace orbitcap
{

// IMU session logs are JSON Lines, one sample per line, keys in this order:
//   {"t_ms":120,"q":[x,y,z,w],"a":[x,y,z],"w":[x,y,z]}
// t_ms is an integer (ms since session start), a is m/s^2, w is rad/s.

/// Parse one record object. Throws MalformedLine / NonFiniteField-style
/// errors without a line number.
ImuSample sample_from_json(const nlohmann::json& record);

/// Canonical single-line encoding, without the trailing newline.
std::string sample_to_json_line(const ImuSample& sample);

/// Whole-stream parse. Errors carry the 1-based line number. Timestamps
/// must be strictly increasing.
std::vector<ImuSample> parse_log(std::istream& in);
std::vector<ImuSample> parse_log_text(std::string_view text);

void write_log(std::ostream& out, const std::vector<ImuSample>& samples);
std::string write_log_text(const std::vector<ImuSample>& samples);

struct OrientationEntry
{
  std::string image_id;
  Quaternion q;

  bool operator==(const OrientationEntry&) const = default;
};

using OrientationList = std::vector<OrientationEntry>;

/// CSV with header `image_id,qx,qy,qz,qw`. Errors: MalformedRow,
/// DuplicateImageId, and the quaternion checks, each with a line number.
OrientationList import_orientations(std::istream& in);
OrientationList import_orientations_text(std::string_view text);

} // namespace orbitcap
