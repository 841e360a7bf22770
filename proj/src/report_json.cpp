/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/report_json.hpp"

#include "orbitcap/error.hpp"

namespace orbitcap
{

namespace
{

constexpr int kSchemaVersion = 1;

Json cell_to_json(const CellIndex& cell)
{
  return Json{{"p", cell.p}, {"t", cell.t}};
}

template <typename T>
T get_as(const Json& value, const std::string& key)
{
  try
  {
    return value.get<T>();
  }
  catch (const nlohmann::json::exception&)
  {
    throw Error(ErrorCode::InvalidConfig, "config key '" + key + "' has the wrong type");
  }
}

int get_int(const Json& value, const std::string& key)
{
  if (!value.is_number_integer())
    throw Error(ErrorCode::InvalidConfig, "config key '" + key + "' must be an integer");
  return value.get<int>();
}

} // namespace

Json config_to_json(const SessionConfig& cfg)
{
  return Json{
      {"grid_theta", cfg.grid.n_theta},
      {"grid_phi", cfg.grid.n_phi},
      {"pole_zone", cfg.grid.pole_zone_deg},
      {"alpha", cfg.gate.alpha},
      {"a_th", cfg.gate.a_th},
      {"omega_th", cfg.gate.omega_th},
      {"hold_ms", cfg.gate.hold_ms},
      {"recapture", std::string(to_string(cfg.recapture))},
  };
}

SessionConfig apply_config_overrides(const SessionConfig& base, const Json& overrides)
{
  if (!overrides.is_object())
    throw Error(ErrorCode::InvalidConfig, "config overrides must be a JSON object");

  SessionConfig cfg = base;
  for (const auto& [key, value] : overrides.items())
  {
    if (key == "grid_theta")
      cfg.grid.n_theta = get_int(value, key);
    else if (key == "grid_phi")
      cfg.grid.n_phi = get_int(value, key);
    else if (key == "pole_zone")
      cfg.grid.pole_zone_deg = get_as<double>(value, key);
    else if (key == "alpha")
      cfg.gate.alpha = get_as<double>(value, key);
    else if (key == "a_th")
      cfg.gate.a_th = get_as<double>(value, key);
    else if (key == "omega_th")
      cfg.gate.omega_th = get_as<double>(value, key);
    else if (key == "hold_ms")
      cfg.gate.hold_ms = get_int(value, key);
    else if (key == "recapture")
      cfg.recapture = parse_recapture_policy(get_as<std::string>(value, key));
    else
      throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

Json capture_to_json(const CaptureEvent& event)
{
  return Json{
      {"t_ms", event.t_ms},
      {"theta_deg", rad_to_deg(event.angles.theta)},
      {"phi_deg", rad_to_deg(event.angles.phi)},
      {"p", event.cell.p},
      {"t", event.cell.t},
      {"newly_covered", event.newly_covered},
      {"coverage_after", event.coverage_after},
  };
}

Json hint_to_json(const GuidanceHint& hint)
{
  return Json{
      {"target_cell", cell_to_json(hint.target_cell)},
      {"target_theta_deg", rad_to_deg(hint.target_angles.theta)},
      {"target_phi_deg", rad_to_deg(hint.target_angles.phi)},
      {"yaw_delta_deg", rad_to_deg(hint.yaw_delta)},
      {"pitch_delta_deg", rad_to_deg(hint.pitch_delta)},
      {"uncovered_area_pct", hint.uncovered_area_pct},
  };
}

Json band_report_to_json(const BandReport& bands)
{
  Json out = Json::array();
  for (const BandRecord& record : bands)
  {
    out.push_back(Json{
        {"band_start_deg", record.band.start_deg},
        {"band_end_deg", record.band.end_deg},
        {"image_count", record.image_count},
        {"coverage_pct", record.coverage_pct},
    });
  }
  return out;
}

Json report_to_json(const SessionReport& report)
{
  Json captures = Json::array();
  for (const CaptureEvent& event : report.captures)
    captures.push_back(capture_to_json(event));

  Json visits = Json::array();
  for (const FirstVisit& visit : report.first_visits)
    visits.push_back(Json{{"p", visit.cell.p}, {"t", visit.cell.t}, {"t_ms", visit.t_ms}});

  return Json{
      {"v", kSchemaVersion},
      {"config", config_to_json(report.config)},
      {"sample_count", report.sample_count},
      {"coverage_pct", report.coverage_pct},
      {"capture_count", report.captures.size()},
      {"bands", band_report_to_json(report.bands)},
      {"captures", std::move(captures)},
      {"first_visits", std::move(visits)},
      {"coverage",
       Json{{"n_phi", report.coverage.rows()}, {"n_theta", report.coverage.cols()},
            {"bits", to_bit_string(report.coverage)}}},
  };
}

std::string dump_report(const SessionReport& report)
{
  return report_to_json(report).dump(2) + "\n";
}

} // namespace orbitcap
