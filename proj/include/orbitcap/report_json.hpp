/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "orbitcap/session.hpp"

#include <string>

#include <json.hpp>

namespace orbitcap
{

using Json = nlohmann::ordered_json;

/// Config as JSON, keys matching the CLI flag names with '_' for '-'.
Json config_to_json(const SessionConfig& cfg);

/// Apply the keys present in `overrides` on top of `base`. Unknown keys and
/// wrong types throw InvalidConfig; the result is validated.
SessionConfig apply_config_overrides(const SessionConfig& base, const Json& overrides);

Json capture_to_json(const CaptureEvent& event);
Json hint_to_json(const GuidanceHint& hint);
Json band_report_to_json(const BandReport& bands);
Json report_to_json(const SessionReport& report);

/// Canonical report.json text (2-space indent, trailing newline).
std::string dump_report(const SessionReport& report);

} // namespace orbitcap
