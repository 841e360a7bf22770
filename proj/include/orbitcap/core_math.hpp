/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <numbers>

#include <Eigen/Dense>

namespace orbitcap
{

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Offset used to keep saturated latitudes inside the open lower bound.
inline constexpr double kPhiFloorEpsilon = 1e-12;

/// Quaternion ingest rejects norms further than this from 1.
inline constexpr double kQuaternionNormTolerance = 1e-3;

inline constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/**
 * Orientation quaternion in sensor order: vector part first, scalar last.
 *
 * Values are stored as ingested. `make_quaternion` rejects components that
 * are non-finite or whose norm is more than 1e-3 away from one, and
 * renormalizes anything further than 1e-9 from unit. Values already within
 * 1e-9 are kept bit-exact so logs round-trip.
 */
struct Quaternion
{
  double x{0.0};
  double y{0.0};
  double z{0.0};
  double w{1.0};

  double norm() const;
  Quaternion operator-() const { return {-x, -y, -z, -w}; }
  bool operator==(const Quaternion&) const = default;
};

Quaternion make_quaternion(double x, double y, double z, double w);

/// Hamilton product `a * b` (apply b, then a).
Quaternion multiply(const Quaternion& a, const Quaternion& b);

/// Rotation of `angle` radians about a unit `axis`.
Quaternion axis_angle_quaternion(const Eigen::Vector3d& axis, double angle);

/// Proper rotation stored as a 3x3 direction cosine matrix (device to world).
class RotationMatrix
{
public:
  RotationMatrix() : m_m(Eigen::Matrix3d::Identity()) {}

  static RotationMatrix identity() { return {}; }

  /// Validates orthonormality and unit determinant within `tol`.
  static RotationMatrix from_matrix(const Eigen::Matrix3d& m, double tol = 1e-9);

  double operator()(int row, int col) const { return m_m(row, col); }
  const Eigen::Matrix3d& matrix() const { return m_m; }

  RotationMatrix transposed() const { return RotationMatrix(m_m.transpose()); }
  RotationMatrix operator*(const RotationMatrix& rhs) const { return RotationMatrix(m_m * rhs.m_m); }

  bool operator==(const RotationMatrix& rhs) const { return m_m == rhs.m_m; }

private:
  explicit RotationMatrix(const Eigen::Matrix3d& m) : m_m(m) {}

  friend RotationMatrix quat_to_dcm(const Quaternion& q);

  Eigen::Matrix3d m_m;
};

/// Optical axis in the object-centered frame. Unit length.
struct ViewDirection
{
  double x{0.0};
  double y{0.0};
  double z{1.0};

  Eigen::Vector3d vector() const { return {x, y, z}; }
};

/// Longitude `theta` in (-pi, pi] and latitude `phi` in (-pi/2, pi/2], radians.
struct SphericalAngles
{
  double theta{0.0};
  double phi{0.0};

  bool operator==(const SphericalAngles&) const = default;
};

/// Closed-form quaternion to DCM. The quaternion is normalized first; throws
/// NonUnitQuaternion when its norm is off by more than 1e-3.
RotationMatrix quat_to_dcm(const Quaternion& q);

/// R0^T * Rt: the pose `rt` expressed against baseline `r0`.
RotationMatrix relative_rotation(const RotationMatrix& r0, const RotationMatrix& rt);

/// R_rel * e_z, i.e. the third column of `r_rel`.
ViewDirection view_direction(const RotationMatrix& r_rel);

/// phi = asin(vy), theta = atan2(vx, vz). theta is 0 when the direction is
/// within 1e-6 of a pole, and -pi is reported as pi.
SphericalAngles to_spherical(const ViewDirection& v);

/// Inverse mapping of `to_spherical`.
ViewDirection from_spherical(const SphericalAngles& angles);

/// theta - 2 pi floor((theta + pi) / 2 pi), with the boundary mapped so the
/// result lies in (-pi, pi]. Values already in range are returned unchanged.
double wrap_theta(double theta);

/// Clamp into (-pi/2, pi/2]; values at or below -pi/2 become -pi/2 + 1e-12.
double sat_phi(double phi);

/// wrap_theta and sat_phi applied together.
SphericalAngles normalize_angles(const SphericalAngles& angles);

} // namespace orbitcap
