#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace ordkin {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Skew-symmetric matrix W(q) with W(q) v = q x v.
inline Mat3 skew(const Vec3& q) {
  Mat3 w;
  w << 0.0, -q.z(), q.y(),
       q.z(), 0.0, -q.x(),
       -q.y(), q.x(), 0.0;
  return w;
}

/// z-component of the planar cross product a x b.
inline double cross_z(const Vec3& a, const Vec3& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace ordkin
