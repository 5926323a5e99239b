#pragma once

#include "ordkin/rng.hpp"
#include "ordkin/types.hpp"

namespace ordkin {

/// An element of SO(2) or SO(3).
///
/// Planar rotations are stored as an angle about the z axis; spatial ones as
/// a rotation vector q whose norm is the angle and whose direction is the
/// axis. The same type doubles as an element of the Lie algebra so(d) when it
/// is passed to an infinitesimal generator.
class Rotation {
 public:
  static Rotation planar(double angle);
  static Rotation spatial(const Vec3& rotation_vector);
  static Rotation identity(int dimension);

  int dimension() const { return dimension_; }
  double angle() const;  // planar only
  const Vec3& rotation_vector() const { return q_; }

  /// 3x3 matrix; planar rotations act about the z axis.
  Mat3 matrix() const;
  Mat2 matrix2() const;  // planar only

  Vec3 apply(const Vec3& v) const { return matrix() * v; }

  Rotation inverse() const;
  /// (*this) after `first`, i.e. the matrix product this * first.
  Rotation compose(const Rotation& first) const;

  /// The algebra element scaled by s, i.e. exp(s * q).
  Rotation scaled(double s) const;

 private:
  Rotation(int dimension, const Vec3& q) : dimension_(dimension), q_(q) {}

  int dimension_;
  Vec3 q_;  // planar: (0, 0, angle)
};

/// Closed-form exponential map exp(W(q)) = I + sin|q| W(u) + (1 - cos|q|) W(u)^2.
Mat3 rodrigues(const Vec3& q);

/// Inverse of rodrigues(): rotation vector with |q| in [0, pi].
Vec3 rotation_log(const Mat3& r);

/// Haar-uniform rotation of the given dimension.
template <class Rng>
Rotation random_rotation(Rng& rng, int dimension) {
  if (dimension == 2) return Rotation::planar(uniform(rng, -kPi, kPi));
  // Uniform unit quaternion (Shoemake), converted to a rotation vector.
  const double u1 = uniform01(rng), u2 = uniform(rng, 0.0, kTwoPi), u3 = uniform(rng, 0.0, kTwoPi);
  const Eigen::Quaterniond q(std::sqrt(u1) * std::cos(u3), std::sqrt(1.0 - u1) * std::sin(u2),
                             std::sqrt(1.0 - u1) * std::cos(u2), std::sqrt(u1) * std::sin(u3));
  const Eigen::AngleAxisd aa(q);
  return Rotation::spatial(aa.angle() * aa.axis());
}

}  // namespace ordkin
