#include "knet/quaternion.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace knet {
namespace {

// Matrix of left multiplication x -> a x on component vectors.
Mat left_mult(const Quaternion& a) {
  Mat m(4, 4);
  const double w = a.w, x = a.x, y = a.y, z = a.z;
  m(0, 0) = w; m(0, 1) = -x; m(0, 2) = -y; m(0, 3) = -z;
  m(1, 0) = x; m(1, 1) = w;  m(1, 2) = -z; m(1, 3) = y;
  m(2, 0) = y; m(2, 1) = z;  m(2, 2) = w;  m(2, 3) = -x;
  m(3, 0) = z; m(3, 1) = -y; m(3, 2) = x;  m(3, 3) = w;
  return m;
}

// Matrix of right multiplication x -> x b.
Mat right_mult(const Quaternion& b) {
  Mat m(4, 4);
  const double w = b.w, x = b.x, y = b.y, z = b.z;
  m(0, 0) = w; m(0, 1) = -x; m(0, 2) = -y; m(0, 3) = -z;
  m(1, 0) = x; m(1, 1) = w;  m(1, 2) = z;  m(1, 3) = -y;
  m(2, 0) = y; m(2, 1) = -z; m(2, 2) = w;  m(2, 3) = x;
  m(3, 0) = z; m(3, 1) = y;  m(3, 2) = -x; m(3, 3) = w;
  return m;
}

const std::array<Quaternion, 4>& basis_quaternions() {
  static const std::array<Quaternion, 4> basis = {
      Quaternion{1, 0, 0, 0}, Quaternion{0, 1, 0, 0}, Quaternion{0, 0, 1, 0},
      Quaternion{0, 0, 0, 1}};
  return basis;
}

void require_unit(const Quaternion& q, double tol) {
  if (std::abs(q.norm() - 1.0) > tol)
    throw Error(ErrorCode::NonUnitQuaternion, "quaternion norm deviates from 1");
}

double frobenius_inner(const Mat& a, const Mat& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

}  // namespace

double Quaternion::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quaternion Quaternion::from_components(const Vec& v) {
  if (v.size() != 4) throw Error(ErrorCode::DimensionMismatch, "quaternion needs 4 components");
  return {v[0], v[1], v[2], v[3]};
}

Quaternion hamilton_product(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

Quaternion operator-(const Quaternion& q) { return {-q.w, -q.x, -q.y, -q.z}; }

Isometry pair_to_so4(const IsoclinicPair& pair, double tol) {
  require_unit(pair.a, tol);
  require_unit(pair.b, tol);
  return Isometry{left_mult(pair.a) * right_mult(pair.b)};
}

IsoclinicPair so4_to_pair(const Mat& m, double tol) {
  if (m.rows() != 4 || m.cols() != 4)
    throw Error(ErrorCode::DimensionMismatch, "expected a 4x4 matrix");
  if (max_abs_diff(m.transpose() * m, Mat::identity(4)) > tol ||
      std::abs(m.determinant() - 1.0) > tol)
    throw Error(ErrorCode::NotSpecialOrthogonal, "matrix is not special orthogonal within tol");

  // The 16 products L_k R_l form an orthogonal basis of 4x4 matrices under
  // the Frobenius inner product, so the coefficient matrix K with
  // K[k][l] = <L_k R_l, m> / 4 equals the outer product a b^T.
  const auto& e = basis_quaternions();
  Mat k(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      k(i, j) = 0.25 * frobenius_inner(left_mult(e[i]) * right_mult(e[j]), m);

  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (std::abs(k(i, j)) > std::abs(k(bi, bj))) {
        bi = i;
        bj = j;
      }
  Vec av(4), bv(4);
  for (std::size_t i = 0; i < 4; ++i) av[i] = k(i, bj);
  for (std::size_t j = 0; j < 4; ++j) bv[j] = k(bi, j);
  av = normalized(av);
  bv = normalized(bv);

  IsoclinicPair pair{Quaternion::from_components(av), Quaternion::from_components(bv)};
  if (max_abs_diff(pair_to_so4(pair, tol).matrix, m) > tol) {
    pair.b = -pair.b;
    if (max_abs_diff(pair_to_so4(pair, tol).matrix, m) > tol)
      throw Error(ErrorCode::DecompositionResidual, "no isoclinic pair reproduces the matrix");
  }

  // Canonical sign: first component of a above tol in magnitude is positive.
  const Vec ac = pair.a.components();
  for (double comp : ac) {
    if (std::abs(comp) > tol) {
      if (comp < 0.0) {
        pair.a = -pair.a;
        pair.b = -pair.b;
      }
      break;
    }
  }
  return pair;
}

Mat quat_to_so3(const Quaternion& q, double tol) {
  require_unit(q, tol);
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  Mat r(3, 3);
  r(0, 0) = 1 - 2 * (y * y + z * z);
  r(0, 1) = 2 * (x * y - w * z);
  r(0, 2) = 2 * (x * z + w * y);
  r(1, 0) = 2 * (x * y + w * z);
  r(1, 1) = 1 - 2 * (x * x + z * z);
  r(1, 2) = 2 * (y * z - w * x);
  r(2, 0) = 2 * (x * z - w * y);
  r(2, 1) = 2 * (y * z + w * x);
  r(2, 2) = 1 - 2 * (x * x + y * y);
  return r;
}

std::vector<std::vector<Vec>> project_family(const std::vector<std::vector<Quaternion>>& family,
                                             double tol) {
  std::vector<std::vector<Vec>> projected;
  projected.reserve(family.size());
  for (const auto& set : family) {
    std::vector<Vec> image;
    for (const Quaternion& q : set) {
      const Mat r = quat_to_so3(q, tol);
      Vec flat = r.data();
      bool duplicate = false;
      for (const Vec& existing : image)
        if (distance(existing, flat) <= tol) {
          duplicate = true;
          break;
        }
      if (!duplicate) image.push_back(std::move(flat));
    }
    projected.push_back(std::move(image));
  }
  return projected;
}

}  // namespace knet
