/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/core_math.hpp"

#include "orbitcap/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orbitcap
{

namespace
{

// Below this squared horizontal norm the direction is treated as polar.
constexpr double kPoleHorizontalSq = 1e-12;

// Renormalization threshold for ingested quaternions.
constexpr double kRenormalizeThreshold = 1e-9;

void require_finite(double value, const char* what)
{
  if (!std::isfinite(value))
    throw Error(ErrorCode::NonFinite, std::string(what) + " is not finite");
}

} // namespace

double Quaternion::norm() const
{
  return std::sqrt(x * x + y * y + z * z + w * w);
}

Quaternion make_quaternion(double x, double y, double z, double w)
{
  require_finite(x, "quaternion x");
  require_finite(y, "quaternion y");
  require_finite(z, "quaternion z");
  require_finite(w, "quaternion w");

  Quaternion q{x, y, z, w};
  const double n = q.norm();
  if (std::abs(n - 1.0) > kQuaternionNormTolerance)
    throw Error(ErrorCode::NonUnitQuaternion, "quaternion norm " + std::to_string(n) + " is not unit");

  if (std::abs(n - 1.0) > kRenormalizeThreshold)
    q = {x / n, y / n, z / n, w / n};
  return q;
}

Quaternion multiply(const Quaternion& a, const Quaternion& b)
{
  return {
      a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
      a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
      a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
      a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
  };
}

Quaternion axis_angle_quaternion(const Eigen::Vector3d& axis, double angle)
{
  const Eigen::Vector3d n = axis.normalized();
  const double s = std::sin(angle / 2.0);
  return {s * n.x(), s * n.y(), s * n.z(), std::cos(angle / 2.0)};
}

RotationMatrix RotationMatrix::from_matrix(const Eigen::Matrix3d& m, double tol)
{
  if (!m.allFinite())
    throw Error(ErrorCode::NonFinite, "rotation matrix has non-finite entries");

  const double ortho_err = (m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  const double det_err = std::abs(m.determinant() - 1.0);
  if (ortho_err > tol || det_err > tol)
    throw Error(ErrorCode::InvalidRotation, "matrix is not a proper rotation");
  return RotationMatrix(m);
}

RotationMatrix quat_to_dcm(const Quaternion& q)
{
  require_finite(q.x, "quaternion x");
  require_finite(q.y, "quaternion y");
  require_finite(q.z, "quaternion z");
  require_finite(q.w, "quaternion w");

  const double n = q.norm();
  if (std::abs(n - 1.0) > kQuaternionNormTolerance)
    throw Error(ErrorCode::NonUnitQuaternion, "quaternion norm " + std::to_string(n) + " is not unit");

  const double x = q.x / n;
  const double y = q.y / n;
  const double z = q.z / n;
  const double w = q.w / n;

  Eigen::Matrix3d m;
  m << 1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - z * w), 2.0 * (x * z + y * w),
      2.0 * (x * y + z * w), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - x * w),
      2.0 * (x * z - y * w), 2.0 * (y * z + x * w), 1.0 - 2.0 * (x * x + y * y);
  return RotationMatrix(m);
}

RotationMatrix relative_rotation(const RotationMatrix& r0, const RotationMatrix& rt)
{
  return r0.transposed() * rt;
}

ViewDirection view_direction(const RotationMatrix& r_rel)
{
  return {r_rel(0, 2), r_rel(1, 2), r_rel(2, 2)};
}

SphericalAngles to_spherical(const ViewDirection& v)
{
  const double phi = std::asin(std::clamp(v.y, -1.0, 1.0));

  double theta = 0.0;
  if (v.x * v.x + v.z * v.z >= kPoleHorizontalSq)
    theta = std::atan2(v.x, v.z);
  if (theta == -kPi)
    theta = kPi;

  return {theta, phi};
}

ViewDirection from_spherical(const SphericalAngles& angles)
{
  const double c = std::cos(angles.phi);
  return {c * std::sin(angles.theta), std::sin(angles.phi), c * std::cos(angles.theta)};
}

double wrap_theta(double theta)
{
  require_finite(theta, "theta");

  // On the principal interval the floor term is zero.
  if (theta > -kPi && theta <= kPi)
    return theta;

  double wrapped = theta - kTwoPi * std::floor((theta + kPi) / kTwoPi);

  // The floor form lands on [-pi, pi); move the closed end to +pi.
  if (wrapped <= -kPi)
    wrapped += kTwoPi;
  else if (wrapped > kPi)
    wrapped -= kTwoPi;
  return wrapped;
}

double sat_phi(double phi)
{
  require_finite(phi, "phi");

  if (phi > kHalfPi)
    return kHalfPi;
  if (phi <= -kHalfPi)
    return -kHalfPi + kPhiFloorEpsilon;
  return phi;
}

SphericalAngles normalize_angles(const SphericalAngles& angles)
{
  return {wrap_theta(angles.theta), sat_phi(angles.phi)};
}

} // namespace orbitcap
