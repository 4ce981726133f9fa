#include "knet/construction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace knet {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

// Advance idx to the next k-subset of {0,...,m-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] + (k - i) < m) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Unit normal of a rank-(d-1) subset inside d-dimensional coordinates, or
// nullopt when the subset is rank deficient. The normal is found by extending
// the subset's orthonormal basis with coordinate directions.
std::optional<Vec> facet_normal(const std::vector<Vec>& subset, std::size_t d, double tol) {
  auto [space, rank] = orthonormal_basis(subset, tol);
  if (rank != d - 1) return std::nullopt;
  std::vector<Vec> extended = space.basis;
  for (std::size_t k = 0; k < d; ++k) {
    Vec e(d, 0.0);
    e[k] = 1.0;
    extended.push_back(e);
  }
  auto [full, full_rank] = orthonormal_basis(extended, tol);
  if (full_rank != d) return std::nullopt;
  return full.basis[d - 1];
}

LemmaWitness coplanar_witness(const PointSet& A, const Subspace& plane, double tol) {
  const std::size_t ambient = plane.ambient_dim();
  const Vec& u = plane.basis[0];
  const Vec& v = plane.basis[1];

  // In-plane angles of the points.
  std::vector<std::pair<double, int>> ang(A.points.size());
  for (std::size_t i = 0; i < A.points.size(); ++i)
    ang[i] = {wrap_angle(std::atan2(dot(A.points[i], v), dot(A.points[i], u))), int(i)};
  std::sort(ang.begin(), ang.end());

  // The minimal closed arc containing A is the complement of the largest gap
  // between consecutive points.
  const std::size_t m = ang.size();
  std::size_t gap_at = m - 1;  // gap between ang[gap_at] and ang[(gap_at+1) % m]
  double gap_max = -1.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double next = (k + 1 < m) ? ang[k + 1].first : ang[0].first + kTwoPi;
    const double gap = next - ang[k].first;
    if (gap > gap_max) {
      gap_max = gap;
      gap_at = k;
    }
  }
  const std::size_t start = (gap_at + 1) % m;  // arc runs ccw from start to end
  const std::size_t end = gap_at;
  const double arc_len = kTwoPi - gap_max;

  // a0 = endpoint with the smaller input index.
  const bool a0_is_start = ang[start].second <= ang[end].second;
  const int i0 = a0_is_start ? ang[start].second : ang[end].second;
  const int i1 = a0_is_start ? ang[end].second : ang[start].second;
  const double theta0 = a0_is_start ? ang[start].first : ang[end].first;

  // In-plane unit normal at a0 pointing away from the arc.
  const double theta_n = a0_is_start ? theta0 - std::numbers::pi / 2 : theta0 + std::numbers::pi / 2;
  Vec b_plane(ambient, 0.0);
  for (std::size_t j = 0; j < ambient; ++j)
    b_plane[j] = std::cos(theta_n) * u[j] + std::sin(theta_n) * v[j];

  // Unit direction orthogonal to the plane; exists since n >= 2.
  std::vector<Vec> extended = plane.basis;
  for (std::size_t k = 0; k < ambient; ++k) {
    Vec e(ambient, 0.0);
    e[k] = 1.0;
    extended.push_back(e);
  }
  auto [full, full_rank] = orthonormal_basis(extended, tol);
  if (full_rank < 3)
    throw Error(ErrorCode::RankDeficient, "no direction orthogonal to the plane of A");
  const Vec& u_perp = full.basis[2];

  LemmaWitness w;
  w.a0 = A.points[std::size_t(i0)];
  w.a1 = A.points[std::size_t(i1)];
  w.a0_index = i0;
  w.a1_index = i1;
  w.branch = Branch::Coplanar;
  const double s = distance(w.a1, w.a0);
  const double eps = 0.25 * s;
  w.b = add(scale(eps, b_plane), scale(std::sqrt(1.0 - eps * eps), u_perp));
  w.margin = dot(w.b, w.a1) + 0.5 * s;
  (void)arc_len;
  return w;
}

LemmaWitness facet_witness(const PointSet& A, const Subspace& span_a, std::size_t d, double tol) {
  const std::size_t m = A.points.size();
  // Points in span(A) coordinates.
  std::vector<Vec> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = span_a.coords(A.points[i]);

  // Enumerate (d-1)-subsets in lexicographic index order.
  std::vector<std::size_t> idx(d - 1);
  for (std::size_t i = 0; i < d - 1; ++i) idx[i] = i;
  std::vector<Vec> subset(d - 1);
  do {
    for (std::size_t i = 0; i < d - 1; ++i) subset[i] = x[idx[i]];
    const auto nu = facet_normal(subset, d, tol);
    if (!nu) continue;
    for (const double sign : {1.0, -1.0}) {
      bool supporting = true;
      for (std::size_t i = 0; i < m; ++i) {
        if (sign * dot(*nu, x[i]) > tol) {
          supporting = false;
          break;
        }
      }
      if (!supporting) continue;
      const Vec b = span_a.from_coords(scale(sign, *nu));
      // Contact points of the supporting hyperplane, in index order.
      std::vector<int> contacts;
      for (std::size_t i = 0; i < m; ++i)
        if (dot(b, A.points[i]) >= -tol) contacts.push_back(int(i));
      if (contacts.size() < 2)
        throw Error(ErrorCode::InternalError, "supporting hyperplane with fewer than 2 contacts");
      LemmaWitness w;
      w.a0_index = contacts[0];
      w.a1_index = contacts[1];
      w.a0 = A.points[std::size_t(w.a0_index)];
      w.a1 = A.points[std::size_t(w.a1_index)];
      w.b = b;
      w.branch = Branch::Facet;
      w.margin = dot(b, w.a1) + 0.5 * distance(w.a1, w.a0);
      return w;
    }
  } while (next_combination(idx, m));
  throw Error(ErrorCode::NoFacetFound, "facet enumeration exhausted; tolerance failure");
}

}  // namespace

const char* to_string(Branch branch) {
  return branch == Branch::Facet ? "facet" : "coplanar";
}

PointSet validate_pointset(const std::vector<Vec>& raw, double tol) {
  if (raw.empty()) throw Error(ErrorCode::InvalidParams, "empty point list");
  const std::size_t ambient = raw.front().size();
  if (ambient < 2) throw Error(ErrorCode::InvalidParams, "ambient dimension below 2");

  PointSet A;
  A.n = int(ambient) - 1;
  for (const Vec& p : raw) {
    if (p.size() != ambient) throw Error(ErrorCode::DimensionMismatch, "mixed point lengths");
    if (!all_finite(p)) throw Error(ErrorCode::NotOnSphere, "non-finite coordinate");
    const double r = norm(p);
    if (std::abs(r - 1.0) > tol)
      throw Error(ErrorCode::NotOnSphere,
                  "point norm " + std::to_string(r) + " deviates from 1 beyond tolerance");
    const Vec q = scale(1.0 / r, p);
    bool duplicate = false;
    for (const Vec& existing : A.points)
      if (distance(existing, q) <= tol) {
        duplicate = true;
        break;
      }
    if (!duplicate) A.points.push_back(q);
  }

  if (A.points.size() < 2)
    throw Error(ErrorCode::DiamZero, "fewer than 2 distinct points; diameter is 0");

  double diam = 0.0;
  for (std::size_t i = 0; i < A.points.size(); ++i)
    for (std::size_t j = i + 1; j < A.points.size(); ++j)
      diam = std::max(diam, distance(A.points[i], A.points[j]));
  if (diam > 1.0 + tol)
    throw Error(ErrorCode::DiamTooLarge, "diameter " + std::to_string(diam) + " exceeds 1");
  A.diameter = diam;
  return A;
}

LemmaWitness lemma1_witness(const PointSet& A, double tol) {
  auto [span_a, d] = orthonormal_basis(A.points, tol);
  if (d < 2) throw Error(ErrorCode::RankDeficient, "span of A has rank below 2");
  if (d == 2) return coplanar_witness(A, span_a, tol);
  return facet_witness(A, span_a, d, tol);
}

Vec apex_point(const LemmaWitness& w, double tol) {
  auto [L, rank] = orthonormal_basis({w.a0, w.a1, w.b}, tol);
  if (rank < 3) throw Error(ErrorCode::DegenerateSpan, "b, a0, a1 do not span a 3-space");

  const double s = distance(w.a1, w.a0);
  const double t = 1.0 - 0.5 * s * s;  // target inner product with a0 and a1

  // Solve <a2,a0> = <a2,a1> = t for the first two basis coordinates; a0 and
  // a1 have no component along the third basis vector by construction.
  const Vec a0c = L.coords(w.a0);
  const Vec a1c = L.coords(w.a1);
  const double det = a0c[0] * a1c[1] - a0c[1] * a1c[0];
  if (std::abs(det) <= tol) throw Error(ErrorCode::DegenerateSpan, "a0 and a1 nearly collinear");
  const double alpha = (t * a1c[1] - t * a0c[1]) / det;
  const double beta = (t * a0c[0] - t * a1c[0]) / det;

  double gamma_sq = 1.0 - alpha * alpha - beta * beta;
  if (gamma_sq < -tol) throw Error(ErrorCode::NoRealRoot, "no unit apex exists");
  const double gamma = std::sqrt(std::max(gamma_sq, 0.0));

  const Vec root_pos = L.from_coords({alpha, beta, gamma});
  const Vec root_neg = L.from_coords({alpha, beta, -gamma});
  return dot(w.b, root_pos) >= dot(w.b, root_neg) ? root_pos : root_neg;
}

TriangleFrame triangle_frame(const LemmaWitness& w, const Vec& a2, double tol) {
  TriangleFrame frame;
  frame.a0 = w.a0;
  frame.a1 = w.a1;
  frame.a2 = a2;
  frame.s = distance(w.a1, w.a0);
  frame.c = scale(1.0 / 3.0, add(add(w.a0, w.a1), a2));

  const double apex_margin = dot(w.b, a2) - 0.5 * frame.s;
  if (apex_margin <= -tol)
    throw Error(ErrorCode::StarInequalityViolated, "apex is not above b by half the side length");
  const double star = dot(w.b, frame.c);
  if (star <= tol)
    throw Error(ErrorCode::StarInequalityViolated,
                "<b,c> = " + std::to_string(star) + " is not positive");

  auto [L, rank] = orthonormal_basis({w.b, w.a0, w.a1}, tol);
  if (rank < 3) throw Error(ErrorCode::DegenerateSpan, "b, a0, a1 do not span a 3-space");
  frame.L = L;
  return frame;
}

Isometry build_isometry(const TriangleFrame& frame, int n, double tol) {
  const std::size_t ambient = frame.L.ambient_dim();
  const std::size_t target = std::size_t(n) + 1;
  if (target < ambient)
    throw Error(ErrorCode::DimensionMismatch, "target dimension below the frame's ambient space");

  Subspace L = frame.L;
  Vec a0 = frame.a0, a1 = frame.a1, a2 = frame.a2, c = frame.c;
  if (target > ambient) {
    for (Vec* v : {&a0, &a1, &a2, &c}) v->resize(target, 0.0);
    for (Vec& u : L.basis) u.resize(target, 0.0);
  }

  const Vec axis = normalized(L.coords(c));
  const Vec a0c = L.coords(a0);
  const Vec a1c = L.coords(a1);

  constexpr double third_turn = 2.0 * std::numbers::pi / 3.0;
  Mat r3 = rotation_about_axis(axis, third_turn, tol);
  if (distance(r3.apply(a0c), a1c) > tol) {
    r3 = rotation_about_axis(axis, -third_turn, tol);
    if (distance(r3.apply(a0c), a1c) > tol)
      throw Error(ErrorCode::CyclicMapFailure, "neither rotation sign maps a0 to a1");
  }

  Isometry f = embed_block_rotation(L, r3);
  const double cyc = std::max({distance(f.apply(a0), a1), distance(f.apply(a1), a2),
                               distance(f.apply(a2), a0)});
  if (cyc > tol) throw Error(ErrorCode::CyclicMapFailure, "rotation does not cycle the triangle");
  if (distance(f.apply(c), c) > tol)
    throw Error(ErrorCode::CyclicMapFailure, "rotation moves its own axis");
  if (f.order3_residual() > tol)
    throw Error(ErrorCode::CyclicMapFailure, "rotation is not of order 3");
  return f;
}

Certificate construct_counterexample(const PointSet& A, double tol) {
  if (A.n < 2) throw Error(ErrorCode::InvalidParams, "sphere dimension must be at least 2");

  Certificate cert;
  cert.tol_used = tol;
  cert.witness = lemma1_witness(A, tol);
  const Vec a2 = apex_point(cert.witness, tol);
  cert.frame = triangle_frame(cert.witness, a2, tol);
  cert.f = build_isometry(cert.frame, A.n, tol);
  cert.linked_witness_indices = {cert.witness.a0_index, cert.witness.a1_index};

  const Vec& b = cert.witness.b;
  const Vec& c = cert.frame.c;
  cert.lambda = dot(c, c) / (3.0 * dot(b, c));

  const Vec fb = cert.f.apply(b);
  const Vec ffb = cert.f.apply(fb);
  const Vec combo = scale(cert.lambda, add(add(b, fb), ffb));

  CertificateMargins& m = cert.margins;
  m.lemma = cert.witness.margin;
  m.apex = dot(b, cert.frame.a2) - 0.5 * cert.frame.s;
  m.star = dot(b, c);
  m.b_at_a0 = dot(b, cert.witness.a0);
  m.halfspace_b = -1.0;
  m.halfspace_c = 2.0;
  for (const Vec& a : A.points) {
    m.halfspace_b = std::max(m.halfspace_b, dot(b, a));
    m.halfspace_c = std::min(m.halfspace_c, dot(c, a));
  }
  m.farkas_residual = distance(c, combo);
  m.cyclic_residual = std::max({distance(cert.f.apply(cert.frame.a0), cert.frame.a1),
                                distance(cert.f.apply(cert.frame.a1), cert.frame.a2),
                                distance(cert.f.apply(cert.frame.a2), cert.frame.a0)});
  m.order_residual = cert.f.order3_residual();
  m.axis_residual = distance(cert.f.apply(c), c);

  if (m.farkas_residual > tol)
    throw Error(ErrorCode::InternalError,
                "Farkas identity residual " + std::to_string(m.farkas_residual));
  return cert;
}

}  // namespace knet
