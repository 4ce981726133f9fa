#pragma once

#include <vector>

#include "knet/geom.hpp"

namespace knet {

/// Quaternion w + x i + y j + z k.
struct Quaternion {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

  double norm() const;
  Quaternion conjugate() const { return {w, -x, -y, -z}; }
  Vec components() const { return {w, x, y, z}; }
  static Quaternion from_components(const Vec& v);
};

Quaternion hamilton_product(const Quaternion& p, const Quaternion& q);
inline Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return hamilton_product(p, q);
}
Quaternion operator-(const Quaternion& q);

/// Pair (a, b) of unit quaternions inducing the rotation x -> a x b of S^3;
/// defined up to the simultaneous sign flip (a, b) ~ (-a, -b).
struct IsoclinicPair {
  Quaternion a, b;
};

/// 4x4 matrix of x -> a x b on component vectors (w, x, y, z).
/// Throws NonUnitQuaternion.
Isometry pair_to_so4(const IsoclinicPair& pair, double tol = kDefaultTol);

/// Inverse decomposition: recover (a, b) with pair_to_so4(a, b) = m up to
/// residual tol. Sign convention: the first component of a that exceeds tol
/// in magnitude (in order w, x, y, z) is positive.
/// Throws NotSpecialOrthogonal, DecompositionResidual.
IsoclinicPair so4_to_pair(const Mat& m, double tol = kDefaultTol);

/// Rotation of R^3 given by conjugation with a unit quaternion; the two-to-one
/// homomorphism onto SO(3), identifying q with -q. Throws NonUnitQuaternion.
Mat quat_to_so3(const Quaternion& q, double tol = kDefaultTol);

/// Elementwise image of a family of unit-quaternion sets under quat_to_so3,
/// each rotation flattened to a row-major 9-vector, deduplicated at tol.
std::vector<std::vector<Vec>> project_family(const std::vector<std::vector<Quaternion>>& family,
                                             double tol = kDefaultTol);

}  // namespace knet
