/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/protocol.hpp"

#include "orbitcap/error.hpp"
#include "orbitcap/log_io.hpp"

namespace orbitcap
{

namespace
{

Json envelope(std::string_view type)
{
  return Json{{"v", kProtocolVersion}, {"type", type}};
}

Json cell_or_null(const std::optional<CellIndex>& cell)
{
  if (!cell)
    return nullptr;
  return Json{{"p", cell->p}, {"t", cell->t}};
}

} // namespace

ProtocolSession::ProtocolSession(SessionConfig defaults) : m_defaults(defaults), m_config(defaults) {}

ProtocolSession::Output ProtocolSession::handle(std::string_view frame)
{
  if (m_closed)
    return {};

  Json message;
  try
  {
    message = Json::parse(frame);
  }
  catch (const Json::exception& e)
  {
    return fail("bad_message", std::string("frame is not JSON: ") + e.what());
  }

  if (!message.is_object() || !message.contains("type") || !message["type"].is_string())
    return fail("bad_message", "frame must be an object with a string 'type'");
  if (message.contains("v") && message["v"] != kProtocolVersion)
    return fail("bad_message", "unsupported protocol version");

  const std::string type = message["type"].get<std::string>();
  if (type == "hello")
    return on_hello(message);
  if (!m_state)
    return fail("bad_order", "'" + type + "' before hello");
  if (type == "sample")
    return on_sample(message);
  if (type == "snapshot_request")
    return on_snapshot();
  if (type == "finalize")
    return on_finalize();
  return fail("bad_message", "unknown message type '" + type + "'");
}

std::optional<SessionReport> ProtocolSession::report() const
{
  if (!m_state)
    return std::nullopt;
  return finalize(*m_state, m_config);
}

ProtocolSession::Output ProtocolSession::on_hello(const Json& message)
{
  if (m_state)
    return fail("bad_order", "duplicate hello");

  try
  {
    m_config = message.contains("config") ? apply_config_overrides(m_defaults, message["config"]) : m_defaults;
    m_config.validate();
  }
  catch (const Error& e)
  {
    return fail("bad_config", e.what());
  }

  m_state.emplace(m_config);
  Json ready = envelope("ready");
  ready["config"] = config_to_json(m_config);
  return {{ready.dump()}, false};
}

ProtocolSession::Output ProtocolSession::on_sample(const Json& message)
{
  if (!message.contains("sample"))
    return fail("bad_sample", "sample message without 'sample'");

  IngestResult result;
  try
  {
    // Round-trip through the unordered type used by the log reader.
    const ImuSample sample = sample_from_json(nlohmann::json::parse(message["sample"].dump()));
    result = session_ingest(*m_state, sample, m_config);
  }
  catch (const Error& e)
  {
    return fail("bad_sample", e.what());
  }

  const SessionState& state = *m_state;
  Json reply = envelope("state");
  reply["t_ms"] = *state.gate.last_t_ms;
  reply["gate_status"] = to_string(state.gate.status);
  reply["coverage_pct"] = coverage_rate(state.coverage);
  reply["current_cell"] = cell_or_null(state.current_cell);
  reply["newly_covered"] = result.newly_covered;
  reply["capture"] = result.capture ? capture_to_json(*result.capture) : Json(nullptr);
  const auto hint = guidance(state);
  reply["hint"] = hint ? hint_to_json(*hint) : Json(nullptr);
  return {{reply.dump()}, false};
}

ProtocolSession::Output ProtocolSession::on_snapshot() const
{
  const Snapshot snap = snapshot(*m_state);
  Json captures = Json::array();
  for (const CaptureEvent& event : m_state->captures)
    captures.push_back(capture_to_json(event));

  Json reply = envelope("snapshot");
  reply["coverage_pct"] = snap.coverage_pct;
  reply["n_phi"] = snap.raw.rows();
  reply["n_theta"] = snap.raw.cols();
  reply["raw"] = to_bit_string(snap.raw);
  reply["refined"] = to_bit_string(snap.refined);
  reply["capture_count"] = snap.capture_count;
  reply["gate_status"] = to_string(snap.gate_status);
  reply["captures"] = std::move(captures);
  return {{reply.dump()}, false};
}

ProtocolSession::Output ProtocolSession::on_finalize()
{
  Json reply = envelope("report");
  reply["report"] = report_to_json(finalize(*m_state, m_config));
  m_closed = true;
  return {{reply.dump()}, true};
}

ProtocolSession::Output ProtocolSession::fail(std::string_view code, const std::string& message)
{
  Json reply = envelope("error");
  reply["code"] = code;
  reply["message"] = message;
  m_closed = true;
  return {{reply.dump()}, true};
}

} // namespace orbitcap
