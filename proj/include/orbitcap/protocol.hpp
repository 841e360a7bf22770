/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "orbitcap/report_json.hpp"
#include "orbitcap/session.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orbitcap
{

inline constexpr int kProtocolVersion = 1;

/**
 * Transport-free state machine for one live connection.
 *
 * Client frames (JSON text, "v": 1):
 *   {"type":"hello","config":{...overrides}}
 *   {"type":"sample","sample":{"t_ms":..,"q":[..],"a":[..],"w":[..]}}
 *   {"type":"snapshot_request"}
 *   {"type":"finalize"}
 *
 * Server frames: ready, state (exactly one per sample), snapshot, report,
 * error. An error or a report ends the connection. Angles on the wire are
 * degrees; sensor payloads keep the log units.
 */
class ProtocolSession
{
public:
  struct Output
  {
    std::vector<std::string> replies;
    bool close{false};
  };

  explicit ProtocolSession(SessionConfig defaults);

  Output handle(std::string_view frame);

  bool started() const { return m_state.has_value(); }
  bool closed() const { return m_closed; }

  /// Report of the session so far; empty before a successful hello.
  std::optional<SessionReport> report() const;

private:
  Output on_hello(const Json& message);
  Output on_sample(const Json& message);
  Output on_snapshot() const;
  Output on_finalize();
  Output fail(std::string_view code, const std::string& message);

  SessionConfig m_defaults;
  SessionConfig m_config;
  std::optional<SessionState> m_state;
  bool m_closed{false};
};

} // namespace orbitcap
