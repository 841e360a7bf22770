/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/log_io.hpp"

#include "orbitcap/error.hpp"
#include "orbitcap/number_format.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace orbitcap
{

namespace
{

using nlohmann::json;

template <std::size_t N>
std::array<double, N> read_vector(const json& record, const char* key)
{
  const auto it = record.find(key);
  if (it == record.end())
    throw Error(ErrorCode::MalformedLine, std::string("missing key '") + key + "'");
  if (!it->is_array() || it->size() != N)
    throw Error(ErrorCode::MalformedLine, std::string("'") + key + "' must be an array of " + std::to_string(N) + " numbers");

  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i)
  {
    const json& v = (*it)[i];
    if (!v.is_number())
      throw Error(ErrorCode::MalformedLine, std::string("'") + key + "' must contain numbers");
    out[i] = v.get<double>();
    if (!std::isfinite(out[i]))
      throw Error(ErrorCode::NonFinite, std::string("'") + key + "' has a non-finite component");
  }
  return out;
}

void append_array(std::string& out, std::initializer_list<double> values)
{
  out.push_back('[');
  bool first = true;
  for (double v : values)
  {
    if (!first)
      out.push_back(',');
    out += format_double(v);
    first = false;
  }
  out.push_back(']');
}

std::string_view trim_cr(std::string_view line)
{
  if (!line.empty() && line.back() == '\r')
    line.remove_suffix(1);
  return line;
}

double parse_csv_number(std::string_view field, const char* name)
{
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto result = std::from_chars(first, last, value);
  if (field.empty() || result.ec != std::errc{} || result.ptr != last)
    throw Error(ErrorCode::MalformedRow, std::string("column ") + name + " is not a number: '" + std::string(field) + "'");
  return value;
}

} // namespace

ImuSample sample_from_json(const json& record)
{
  if (!record.is_object())
    throw Error(ErrorCode::MalformedLine, "record is not a JSON object");

  for (const auto& item : record.items())
  {
    const std::string& key = item.key();
    if (key != "t_ms" && key != "q" && key != "a" && key != "w")
      throw Error(ErrorCode::MalformedLine, "unexpected key '" + key + "'");
  }

  const auto t = record.find("t_ms");
  if (t == record.end())
    throw Error(ErrorCode::MalformedLine, "missing key 't_ms'");
  if (!t->is_number_integer())
    throw Error(ErrorCode::MalformedLine, "'t_ms' must be an integer");

  ImuSample sample;
  sample.t_ms = t->get<TimestampMs>();
  const auto q = read_vector<4>(record, "q");
  sample.q = make_quaternion(q[0], q[1], q[2], q[3]);
  sample.accel = read_vector<3>(record, "a");
  sample.gyro = read_vector<3>(record, "w");
  return sample;
}

std::string sample_to_json_line(const ImuSample& s)
{
  std::string out;
  out.reserve(160);
  out += "{\"t_ms\":";
  out += std::to_string(s.t_ms);
  out += ",\"q\":";
  append_array(out, {s.q.x, s.q.y, s.q.z, s.q.w});
  out += ",\"a\":";
  append_array(out, {s.accel[0], s.accel[1], s.accel[2]});
  out += ",\"w\":";
  append_array(out, {s.gyro[0], s.gyro[1], s.gyro[2]});
  out += '}';
  return out;
}

std::vector<ImuSample> parse_log(std::istream& in)
{
  std::vector<ImuSample> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    try
    {
      const json record = json::parse(trim_cr(line));
      ImuSample sample = sample_from_json(record);
      if (!samples.empty() && sample.t_ms <= samples.back().t_ms)
      {
        throw Error(ErrorCode::NonMonotonicTimestamp, "timestamp " + std::to_string(sample.t_ms) +
                                                          " does not follow " + std::to_string(samples.back().t_ms));
      }
      samples.push_back(sample);
    }
    catch (const json::exception& e)
    {
      throw Error(ErrorCode::MalformedLine, std::string("invalid JSON: ") + e.what(), line_no);
    }
    catch (const Error& e)
    {
      throw e.at_line(line_no);
    }
  }
  return samples;
}

std::vector<ImuSample> parse_log_text(std::string_view text)
{
  std::istringstream in{std::string(text)};
  return parse_log(in);
}

void write_log(std::ostream& out, const std::vector<ImuSample>& samples)
{
  for (const ImuSample& s : samples)
    out << sample_to_json_line(s) << '\n';
}

std::string write_log_text(const std::vector<ImuSample>& samples)
{
  std::ostringstream out;
  write_log(out, samples);
  return out.str();
}

OrientationList import_orientations(std::istream& in)
{
  OrientationList list;
  std::unordered_set<std::string> seen;

  std::string raw;
  std::size_t line_no = 0;
  if (!std::getline(in, raw))
    return list;
  ++line_no;
  if (trim_cr(raw) != "image_id,qx,qy,qz,qw")
    throw Error(ErrorCode::MalformedRow, "expected header 'image_id,qx,qy,qz,qw'", line_no);

  while (std::getline(in, raw))
  {
    ++line_no;
    const std::string_view line = trim_cr(raw);
    try
    {
      std::vector<std::string_view> fields;
      std::size_t start = 0;
      while (true)
      {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos)
          break;
        start = comma + 1;
      }
      if (fields.size() != 5)
        throw Error(ErrorCode::MalformedRow, "expected 5 columns, found " + std::to_string(fields.size()));
      if (fields[0].empty())
        throw Error(ErrorCode::MalformedRow, "empty image_id");

      std::string id(fields[0]);
      if (!seen.insert(id).second)
        throw Error(ErrorCode::DuplicateImageId, "duplicate image_id '" + id + "'");

      const Quaternion q = make_quaternion(parse_csv_number(fields[1], "qx"), parse_csv_number(fields[2], "qy"),
                                           parse_csv_number(fields[3], "qz"), parse_csv_number(fields[4], "qw"));
      list.push_back({std::move(id), q});
    }
    catch (const Error& e)
    {
      throw e.at_line(line_no);
    }
  }
  return list;
}

OrientationList import_orientations_text(std::string_view text)
{
  std::istringstream in{std::string(text)};
  return import_orientations(in);
}

} // namespace orbitcap
