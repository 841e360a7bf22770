/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/core_math.hpp"
#include "orbitcap/error.hpp"

#include "oracles/oracles.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

using namespace orbitcap;

namespace
{

Quaternion to_quaternion(const oracle::Quat& q)
{
  return {q.x, q.y, q.z, q.w};
}

double max_deviation(const RotationMatrix& r, const oracle::Mat3& m)
{
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, std::abs(r(i, j) - m[i][j]));
  return worst;
}

RotationMatrix random_rotation(std::mt19937_64& rng)
{
  return quat_to_dcm(to_quaternion(oracle::random_unit_quaternion(rng)));
}

} // namespace

TEST_CASE("quat_to_dcm: identity quaternion gives the identity matrix")
{
  const RotationMatrix r = quat_to_dcm({0.0, 0.0, 0.0, 1.0});
  CHECK(r.matrix() == Eigen::Matrix3d::Identity());
}

TEST_CASE("quat_to_dcm: 90 degrees about y matches Rodrigues")
{
  const double s = std::sin(oracle::pi / 4);
  const double c = std::cos(oracle::pi / 4);
  const RotationMatrix r = quat_to_dcm({0.0, s, 0.0, c});
  CHECK(max_deviation(r, oracle::rodrigues({0, 1, 0}, oracle::pi / 2)) < 1e-12);

  // e_z turns toward +x.
  CHECK(r(0, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r(2, 2)) < 1e-12);
}

TEST_CASE("quat_to_dcm: random quaternions against the Rodrigues oracle")
{
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i)
  {
    const oracle::Quat q = oracle::random_unit_quaternion(rng);
    const RotationMatrix r = quat_to_dcm(to_quaternion(q));
    REQUIRE(max_deviation(r, oracle::rodrigues_from_quaternion(q)) < 1e-9);

    const Eigen::Matrix3d& m = r.matrix();
    CHECK((m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs(m.determinant() - 1.0) < 1e-9);
  }
}

TEST_CASE("quat_to_dcm: double cover")
{
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i)
  {
    const Quaternion q = to_quaternion(oracle::random_unit_quaternion(rng));
    const Eigen::Matrix3d diff = quat_to_dcm(q).matrix() - quat_to_dcm(-q).matrix();
    CHECK(diff.cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("quat_to_dcm: norm tolerance")
{
  SUBCASE("slightly off-unit input is renormalized")
  {
    const RotationMatrix r = quat_to_dcm({0.0, 0.0, 0.0, 1.0005});
    CHECK((r.matrix() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("far from unit is rejected")
  {
    try
    {
      quat_to_dcm({0.0, 0.0, 0.0, 0.5});
      FAIL("expected NonUnitQuaternion");
    }
    catch (const Error& e)
    {
      CHECK(e.code() == ErrorCode::NonUnitQuaternion);
    }
  }
  SUBCASE("non-finite components are rejected")
  {
    CHECK_THROWS_AS(quat_to_dcm({std::numeric_limits<double>::quiet_NaN(), 0, 0, 1}), Error);
  }
}

TEST_CASE("make_quaternion keeps near-unit values bit-exact and renormalizes larger drift")
{
  const double s = std::sqrt(0.5);
  const Quaternion exact = make_quaternion(s, 0.0, 0.0, s);
  CHECK(exact == Quaternion{s, 0.0, 0.0, s});

  const Quaternion drifted = make_quaternion(0.0, 0.0, 0.0, 1.0004);
  CHECK(drifted.w == 1.0);
  CHECK(std::abs(drifted.norm() - 1.0) < 1e-6);

  CHECK_THROWS_AS(make_quaternion(0.0, 0.0, 0.0, 0.5), Error);
}

TEST_CASE("relative_rotation")
{
  std::mt19937_64 rng(11);
  const RotationMatrix r0 = random_rotation(rng);
  const RotationMatrix rt = random_rotation(rng);

  SUBCASE("self alignment is the identity")
  {
    const Eigen::Matrix3d m = relative_rotation(r0, r0).matrix();
    CHECK((m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("identity baseline returns the pose")
  {
    CHECK((relative_rotation(RotationMatrix::identity(), rt).matrix() - rt.matrix()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("R0 * R_rel reproduces Rt")
  {
    for (int i = 0; i < 200; ++i)
    {
      const RotationMatrix a = random_rotation(rng);
      const RotationMatrix b = random_rotation(rng);
      const Eigen::Matrix3d back = a.matrix() * relative_rotation(a, b).matrix();
      CHECK((back - b.matrix()).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  SUBCASE("relative_rotation(r0, r0 * X) == X")
  {
    for (int i = 0; i < 200; ++i)
    {
      const RotationMatrix x = random_rotation(rng);
      const Eigen::Matrix3d got = relative_rotation(r0, r0 * x).matrix();
      CHECK((got - x.matrix()).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("RotationMatrix::from_matrix validates")
{
  CHECK_NOTHROW(RotationMatrix::from_matrix(Eigen::Matrix3d::Identity()));
  Eigen::Matrix3d reflect = Eigen::Matrix3d::Identity();
  reflect(2, 2) = -1.0;
  CHECK_THROWS_AS(RotationMatrix::from_matrix(reflect), Error);
  CHECK_THROWS_AS(RotationMatrix::from_matrix(2.0 * Eigen::Matrix3d::Identity()), Error);
}

TEST_CASE("view_direction")
{
  const ViewDirection forward = view_direction(RotationMatrix::identity());
  CHECK(forward.x == 0.0);
  CHECK(forward.y == 0.0);
  CHECK(forward.z == 1.0);

  // 90 degrees about x: matrix-vector product oracle on e_z.
  const double h = std::sqrt(0.5);
  const RotationMatrix rx = quat_to_dcm({h, 0.0, 0.0, h});
  const oracle::Vec3 expected = oracle::apply(oracle::rodrigues({1, 0, 0}, oracle::pi / 2), {0, 0, 1});
  const ViewDirection v = view_direction(rx);
  CHECK(std::abs(v.x - expected[0]) < 1e-12);
  CHECK(std::abs(v.y - expected[1]) < 1e-12);
  CHECK(std::abs(v.z - expected[2]) < 1e-12);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i)
  {
    const ViewDirection d = view_direction(random_rotation(rng));
    CHECK(std::abs(d.vector().norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("to_spherical")
{
  CHECK(to_spherical({0.0, 0.0, 1.0}) == SphericalAngles{0.0, 0.0});

  const SphericalAngles side = to_spherical({1.0, 0.0, 0.0});
  CHECK(side.theta == doctest::Approx(oracle::pi / 2));
  CHECK(side.phi == 0.0);

  SUBCASE("backward direction reports +pi, never -pi")
  {
    CHECK(to_spherical({-0.0, 0.0, -1.0}).theta == kPi);
    CHECK(to_spherical({0.0, 0.0, -1.0}).theta == kPi);
  }
  SUBCASE("poles fix theta to zero")
  {
    CHECK(to_spherical({0.0, 1.0, 0.0}) == SphericalAngles{0.0, kHalfPi});
    CHECK(to_spherical({1e-8, -1.0, 0.0}).theta == 0.0);
  }
  SUBCASE("round trip through the spherical parameterization")
  {
    std::mt19937_64 rng(99);
    int checked = 0;
    for (int i = 0; i < 100000; ++i)
    {
      const oracle::Vec3 d = oracle::uniform_direction(rng);
      const SphericalAngles a = to_spherical({d[0], d[1], d[2]});
      if (std::cos(a.phi) < 1e-6)
        continue;
      const ViewDirection back = from_spherical(a);
      REQUIRE(std::abs(back.x - d[0]) < 1e-9);
      REQUIRE(std::abs(back.y - d[1]) < 1e-9);
      REQUIRE(std::abs(back.z - d[2]) < 1e-9);
      ++checked;
    }
    CHECK(checked > 99000);
  }
  SUBCASE("angles -> direction -> angles is the identity away from the poles")
  {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> theta(-kPi, kPi);
    std::uniform_real_distribution<double> phi(-kHalfPi + 1e-6, kHalfPi - 1e-6);
    for (int i = 0; i < 20000; ++i)
    {
      const SphericalAngles a{theta(rng), phi(rng)};
      if (a.theta == -kPi)
        continue;
      const SphericalAngles back = to_spherical(from_spherical(a));
      REQUIRE(std::abs(back.theta - a.theta) < 1e-9);
      REQUIRE(std::abs(back.phi - a.phi) < 1e-9);
    }
  }
}

TEST_CASE("wrap_theta")
{
  CHECK(wrap_theta(3 * kPi / 2) == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK(wrap_theta(0.0) == 0.0);
  CHECK(wrap_theta(kPi) == kPi);
  CHECK(wrap_theta(-kPi) == kPi);
  CHECK(wrap_theta(3 * kPi) == kPi);
  CHECK(wrap_theta(-7.0) == doctest::Approx(-7.0 + kTwoPi));

  CHECK_THROWS_AS(wrap_theta(std::numeric_limits<double>::infinity()), Error);
  CHECK_THROWS_AS(wrap_theta(std::numeric_limits<double>::quiet_NaN()), Error);

  SUBCASE("range, congruence, and idempotence")
  {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> any(-100.0, 100.0);
    for (int i = 0; i < 100000; ++i)
    {
      const double x = any(rng);
      const double w = wrap_theta(x);
      REQUIRE(w > -kPi);
      REQUIRE(w <= kPi);
      const double turns = (x - w) / kTwoPi;
      REQUIRE(std::abs(turns - std::round(turns)) < 1e-9);
      REQUIRE(wrap_theta(w) == w);
    }
  }
}

TEST_CASE("sat_phi")
{
  CHECK(sat_phi(0.3) == 0.3);
  CHECK(sat_phi(2.0) == kHalfPi);
  CHECK(sat_phi(kHalfPi) == kHalfPi);
  CHECK(sat_phi(-2.0) == -kHalfPi + 1e-12);
  CHECK(sat_phi(-kHalfPi) == -kHalfPi + 1e-12);
  CHECK(sat_phi(-2.0) > -kHalfPi);
  CHECK_THROWS_AS(sat_phi(std::numeric_limits<double>::quiet_NaN()), Error);
}
