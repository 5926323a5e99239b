#include "ordkin/rotation.hpp"

#include <cmath>

#include "ordkin/errors.hpp"

namespace ordkin {

Rotation Rotation::planar(double angle) { return Rotation(2, Vec3(0.0, 0.0, angle)); }

Rotation Rotation::spatial(const Vec3& rotation_vector) { return Rotation(3, rotation_vector); }

Rotation Rotation::identity(int dimension) {
  if (dimension != 2 && dimension != 3) throw ConfigurationError("rotation dimension must be 2 or 3");
  return Rotation(dimension, Vec3::Zero());
}

double Rotation::angle() const {
  if (dimension_ != 2) throw ConfigurationError("angle() is only defined for planar rotations");
  return q_.z();
}

Mat3 Rotation::matrix() const { return rodrigues(q_); }

Mat2 Rotation::matrix2() const {
  const double a = angle();
  Mat2 m;
  m << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return m;
}

Rotation Rotation::inverse() const { return Rotation(dimension_, -q_); }

Rotation Rotation::compose(const Rotation& first) const {
  if (dimension_ != first.dimension_) throw ConfigurationError("cannot compose rotations of different dimension");
  if (dimension_ == 2) return planar(q_.z() + first.q_.z());
  return spatial(rotation_log(matrix() * first.matrix()));
}

Rotation Rotation::scaled(double s) const { return Rotation(dimension_, s * q_); }

Mat3 rodrigues(const Vec3& q) {
  const double theta = q.norm();
  if (theta == 0.0) return Mat3::Identity();
  const Mat3 w = skew(q / theta);
  return Mat3::Identity() + std::sin(theta) * w + (1.0 - std::cos(theta)) * (w * w);
}

Vec3 rotation_log(const Mat3& r) {
  const Eigen::AngleAxisd aa(r);
  return aa.angle() * aa.axis();
}

}  // namespace ordkin
