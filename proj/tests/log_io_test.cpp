/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/error.hpp"
#include "orbitcap/log_io.hpp"

#include "oracles/oracles.hpp"

#include <random>
#include <string>

#include <doctest.h>

using namespace orbitcap;

namespace
{

ErrorCode code_of(const std::string& text, std::optional<std::size_t>* line = nullptr)
{
  try
  {
    parse_log_text(text);
  }
  catch (const Error& e)
  {
    if (line)
      *line = e.line();
    return e.code();
  }
  FAIL("expected a parse error");
  return ErrorCode::InvalidConfig;
}

std::vector<ImuSample> random_samples(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dt(1, 50);
  std::normal_distribution<double> val(0.0, 3.0);
  std::vector<ImuSample> out;
  TimestampMs t = 0;
  for (std::size_t i = 0; i < n; ++i)
  {
    t += dt(rng);
    const oracle::Quat q = oracle::random_unit_quaternion(rng);
    out.push_back({t, make_quaternion(q.x, q.y, q.z, q.w), {val(rng), val(rng), val(rng)}, {val(rng), val(rng), val(rng)}});
  }
  return out;
}

} // namespace

TEST_CASE("parse_log")
{
  CHECK(parse_log_text("").empty());

  const auto one = parse_log_text(R"({"t_ms":120,"q":[0,0,0.6,0.8],"a":[0.1,-0.2,0.3],"w":[1e-3,0,2.5]})");
  REQUIRE(one.size() == 1);
  CHECK(one[0].t_ms == 120);
  CHECK(one[0].q == Quaternion{0.0, 0.0, 0.6, 0.8});
  CHECK(one[0].accel == std::array<double, 3>{0.1, -0.2, 0.3});
  CHECK(one[0].gyro == std::array<double, 3>{1e-3, 0.0, 2.5});

  SUBCASE("CRLF line endings")
  {
    CHECK(parse_log_text("{\"t_ms\":1,\"q\":[0,0,0,1],\"a\":[0,0,0],\"w\":[0,0,0]}\r\n").size() == 1);
  }
}

TEST_CASE("parse_log errors carry line numbers")
{
  const std::string good1 = R"({"t_ms":1,"q":[0,0,0,1],"a":[0,0,0],"w":[0,0,0]})";
  const std::string good2 = R"({"t_ms":2,"q":[0,0,0,1],"a":[0,0,0],"w":[0,0,0]})";
  std::optional<std::size_t> line;

  CHECK(code_of(good1 + "\n" + R"({"t_ms":2,"q":[0,0,0,0.5],"a":[0,0,0],"w":[0,0,0]})", &line) ==
        ErrorCode::NonUnitQuaternion);
  CHECK(line == std::size_t{2});

  CHECK(code_of(good1 + "\n" + good2 + "\n{not json", &line) == ErrorCode::MalformedLine);
  CHECK(line == std::size_t{3});

  CHECK(code_of(good2 + "\n" + good1, &line) == ErrorCode::NonMonotonicTimestamp);
  CHECK(line == std::size_t{2});

  CHECK(code_of(R"({"t_ms":1.5,"q":[0,0,0,1],"a":[0,0,0],"w":[0,0,0]})") == ErrorCode::MalformedLine);
  CHECK(code_of(R"({"t_ms":1,"q":[0,0,1],"a":[0,0,0],"w":[0,0,0]})") == ErrorCode::MalformedLine);
  CHECK(code_of(R"({"t_ms":1,"q":[0,0,0,1],"a":[0,0,0]})") == ErrorCode::MalformedLine);
  CHECK(code_of(R"({"t_ms":1,"q":[0,0,0,1],"a":[0,0,0],"w":[0,0,0],"x":1})") == ErrorCode::MalformedLine);
  CHECK(code_of(R"({"t_ms":1,"q":[0,0,0,1],"a":["0",0,0],"w":[0,0,0]})") == ErrorCode::MalformedLine);
  CHECK(code_of(R"([1,2,3])") == ErrorCode::MalformedLine);
  CHECK(code_of(good1 + "\n\n" + good2, &line) == ErrorCode::MalformedLine);
  CHECK(line == std::size_t{2});

  try
  {
    parse_log_text(good1 + "\n{oops");
  }
  catch (const Error& e)
  {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("write_log round trip")
{
  const auto samples = random_samples(10000, 101);
  const std::string text = write_log_text(samples);
  const auto back = parse_log_text(text);
  REQUIRE(back.size() == samples.size());
  CHECK(back == samples);
  CHECK(write_log_text(back) == text);

  SUBCASE("canonical field order")
  {
    ImuSample s;
    s.t_ms = 7;
    s.q = {0.0, 0.0, 0.0, 1.0};
    s.accel = {0.1, 0.0, -2.5};
    s.gyro = {1e-20, 0.0, 3.0};
    CHECK(sample_to_json_line(s) == R"({"t_ms":7,"q":[0.0,0.0,0.0,1.0],"a":[0.1,0.0,-2.5],"w":[1e-20,0.0,3.0]})");
  }
  SUBCASE("full precision survives")
  {
    ImuSample s;
    s.t_ms = 1;
    s.accel = {0.1 + 0.2, 1.0 / 3.0, 123456789.123456789};
    const auto parsed = parse_log_text(sample_to_json_line(s));
    CHECK(parsed.at(0).accel == s.accel);
  }
}

TEST_CASE("import_orientations")
{
  CHECK(import_orientations_text("").empty());
  CHECK(import_orientations_text("image_id,qx,qy,qz,qw\n").empty());

  const auto two = import_orientations_text("image_id,qx,qy,qz,qw\nimg_001,0,0,0,1\nimg_002,0,0.6,0,0.8\n");
  REQUIRE(two.size() == 2);
  CHECK(two[0].image_id == "img_001");
  CHECK(two[1].q == Quaternion{0.0, 0.6, 0.0, 0.8});

  const auto err = [](const std::string& text) -> Error {
    try
    {
      import_orientations_text(text);
    }
    catch (const Error& e)
    {
      return e;
    }
    FAIL("expected an import error");
    return Error(ErrorCode::InvalidConfig, "");
  };

  const Error dup = err("image_id,qx,qy,qz,qw\na,0,0,0,1\nb,0,0,0,1\na,0,0,0,1\n");
  CHECK(dup.code() == ErrorCode::DuplicateImageId);
  CHECK(dup.line() == std::size_t{4});
  CHECK(std::string(dup.what()).find("'a'") != std::string::npos);

  CHECK(err("id,qx,qy,qz,qw\n").code() == ErrorCode::MalformedRow);
  CHECK(err("image_id,qx,qy,qz,qw\na,0,0,1\n").code() == ErrorCode::MalformedRow);
  CHECK(err("image_id,qx,qy,qz,qw\na,0,0,x,1\n").code() == ErrorCode::MalformedRow);
  CHECK(err("image_id,qx,qy,qz,qw\n,0,0,0,1\n").code() == ErrorCode::MalformedRow);
  CHECK(err("image_id,qx,qy,qz,qw\na,0,0,0,2\n").code() == ErrorCode::NonUnitQuaternion);
}
