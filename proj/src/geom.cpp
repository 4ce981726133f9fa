#include "knet/geom.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace knet {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonUnitAxis: return "NonUnitAxis";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::DiamZero: return "DiamZero";
    case ErrorCode::DiamTooLarge: return "DiamTooLarge";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NoFacetFound: return "NoFacetFound";
    case ErrorCode::DegenerateSpan: return "DegenerateSpan";
    case ErrorCode::NoRealRoot: return "NoRealRoot";
    case ErrorCode::StarInequalityViolated: return "StarInequalityViolated";
    case ErrorCode::CyclicMapFailure: return "CyclicMapFailure";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::MalformedCertificate: return "MalformedCertificate";
    case ErrorCode::NonUnitQuaternion: return "NonUnitQuaternion";
    case ErrorCode::NotSpecialOrthogonal: return "NotSpecialOrthogonal";
    case ErrorCode::DecompositionResidual: return "DecompositionResidual";
    case ErrorCode::FullCircle: return "FullCircle";
    case ErrorCode::NotInF1: return "NotInF1";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::ClearanceTooSmall: return "ClearanceTooSmall";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "UnknownError";
}

bool all_finite(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

double distance(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scale(double s, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

Vec normalized(const Vec& v) {
  const double n = norm(v);
  if (n == 0.0) throw Error(ErrorCode::InvalidParams, "cannot normalize the zero vector");
  return scale(1.0 / n, v);
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vec Mat::apply(const Vec& x) const {
  if (x.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
  Vec y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += data_[i * cols_ + j] * x[j];
    y[i] = s;
  }
  return y;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::operator*(const Mat& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix-matrix size mismatch");
  Mat r(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += a * rhs(k, j);
    }
  return r;
}

double Mat::determinant() const {
  if (rows_ != cols_) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = rows_;
  Mat lu = *this;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
    if (lu(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(pivot, j), lu(k, j));
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

Vec Subspace::coords(const Vec& x) const {
  Vec xi(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) xi[i] = dot(basis[i], x);
  return xi;
}

Vec Subspace::from_coords(const Vec& xi) const {
  Vec x(ambient_dim(), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += xi[i] * basis[i][j];
  return x;
}

Vec Subspace::project(const Vec& x) const { return from_coords(coords(x)); }

double Isometry::orthogonality_residual() const {
  return max_abs_diff(matrix.transpose() * matrix, Mat::identity(matrix.rows()));
}

double Isometry::order3_residual() const {
  return max_abs_diff(matrix * matrix * matrix, Mat::identity(matrix.rows()));
}

std::pair<Subspace, std::size_t> orthonormal_basis(const std::vector<Vec>& vectors, double tol) {
  if (vectors.empty()) throw Error(ErrorCode::InvalidParams, "orthonormal_basis of empty list");
  const std::size_t dim = vectors.front().size();
  Subspace space;
  for (const Vec& v : vectors) {
    if (v.size() != dim) throw Error(ErrorCode::DimensionMismatch, "mixed vector lengths");
    if (!all_finite(v)) throw Error(ErrorCode::InvalidParams, "non-finite vector component");
    const double input_norm = norm(v);
    Vec r = v;
    // Two projection passes keep the basis orthonormal near machine precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& u : space.basis) r = sub(r, scale(dot(u, r), u));
    if (norm(r) > tol * std::max(input_norm, 1.0) && input_norm > 0.0) {
      space.basis.push_back(normalized(r));
    }
  }
  return {space, space.basis.size()};
}

Mat rotation_about_axis(const Vec& axis, double angle, double tol) {
  if (axis.size() != 3) throw Error(ErrorCode::DimensionMismatch, "axis must lie in R^3");
  if (std::abs(norm(axis) - 1.0) > tol)
    throw Error(ErrorCode::NonUnitAxis, "rotation axis must have unit norm");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double x = axis[0], y = axis[1], z = axis[2];
  Mat r(3, 3);
  r(0, 0) = c + (1 - c) * x * x;
  r(0, 1) = (1 - c) * x * y - s * z;
  r(0, 2) = (1 - c) * x * z + s * y;
  r(1, 0) = (1 - c) * y * x + s * z;
  r(1, 1) = c + (1 - c) * y * y;
  r(1, 2) = (1 - c) * y * z - s * x;
  r(2, 0) = (1 - c) * z * x - s * y;
  r(2, 1) = (1 - c) * z * y + s * x;
  r(2, 2) = c + (1 - c) * z * z;
  return r;
}

Isometry embed_block_rotation(const Subspace& L, const Mat& r3) {
  if (L.dim() != 3 || r3.rows() != 3 || r3.cols() != 3)
    throw Error(ErrorCode::DimensionMismatch, "need a 3-dimensional subspace and a 3x3 block");
  const std::size_t n1 = L.ambient_dim();
  if (n1 < 3) throw Error(ErrorCode::DimensionMismatch, "ambient dimension below 3");
  // f = I + U (R - I) U^T with U the (n+1)x3 basis matrix of L.
  Mat f = Mat::identity(n1);
  Mat d = r3;
  for (std::size_t i = 0; i < 3; ++i) d(i, i) -= 1.0;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) s += L.basis[k][i] * d(k, l) * L.basis[l][j];
      f(i, j) += s;
    }
  return Isometry{std::move(f)};
}

}  // namespace knet
