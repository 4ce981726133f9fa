#pragma once

#include <cstddef>
#include <vector>

#include "knet/errors.hpp"

namespace knet {

/// Default tolerance for rank and contact decisions.
inline constexpr double kDefaultTol = 1e-9;

using Vec = std::vector<double>;

bool all_finite(const Vec& v);
double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
double distance(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(double s, const Vec& v);
Vec normalized(const Vec& v);

/// Dense real matrix, row-major storage.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Mat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Vec apply(const Vec& x) const;
  Mat transpose() const;
  Mat operator*(const Mat& rhs) const;

  /// Determinant via LU with partial pivoting.
  double determinant() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Max absolute entry of a - b; matrices must have equal shape.
double max_abs_diff(const Mat& a, const Mat& b);

/// Linear subspace given by a mutually orthonormal basis of the ambient space.
struct Subspace {
  std::vector<Vec> basis;

  std::size_t dim() const { return basis.size(); }
  std::size_t ambient_dim() const { return basis.empty() ? 0 : basis.front().size(); }

  /// Coordinates of x in the basis (basis^T x).
  Vec coords(const Vec& x) const;
  /// Point of the ambient space with the given basis coordinates.
  Vec from_coords(const Vec& xi) const;
  /// Orthogonal projection of x onto the subspace.
  Vec project(const Vec& x) const;
};

/// Orientation-preserving linear isometry of R^{n+1}.
struct Isometry {
  Mat matrix;

  std::size_t dim() const { return matrix.rows(); }
  Vec apply(const Vec& x) const { return matrix.apply(x); }

  /// ||M^T M - I||_max
  double orthogonality_residual() const;
  /// ||M^3 - I||_max
  double order3_residual() const;
};

/// Orthonormal basis of the span of `vectors` by modified Gram-Schmidt with a
/// re-orthogonalization pass. A vector is absorbed into the span (rejected)
/// when its residual norm is <= tol * its input norm. Returns the basis and
/// the rank; rank 0 only for all-zero input.
std::pair<Subspace, std::size_t> orthonormal_basis(const std::vector<Vec>& vectors,
                                                   double tol = kDefaultTol);

/// Right-handed rotation by `angle` about a unit axis in R^3 (Rodrigues).
/// Throws NonUnitAxis when | ||axis|| - 1 | > tol.
Mat rotation_about_axis(const Vec& axis, double angle, double tol = kDefaultTol);

/// Extend a 3x3 rotation acting in the basis coordinates of a 3-dimensional
/// subspace L to the isometry of the ambient space that is the identity on
/// the orthogonal complement of L.
Isometry embed_block_rotation(const Subspace& L, const Mat& r3);

}  // namespace knet
