#include "knet/certify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

namespace knet {
namespace {

bool set_contains(const std::vector<Vec>& set, const Vec& p, double tol) {
  for (const Vec& q : set)
    if (distance(p, q) <= tol) return true;
  return false;
}

// Per-set bitmasks: linked_mask[i] has bit j set when sets i and j intersect;
// point_masks lists, for every point of the union, which sets contain it.
struct FamilyIndex {
  std::vector<std::uint32_t> linked_mask;
  std::vector<std::uint32_t> point_masks;
};

FamilyIndex build_index(const Family& f) {
  const std::size_t m = f.sets.size();
  FamilyIndex ix;
  ix.linked_mask.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (!f.sets[i].empty()) ix.linked_mask[i] |= 1u << i;
    for (std::size_t j = i + 1; j < m; ++j) {
      for (const Vec& p : f.sets[i]) {
        if (set_contains(f.sets[j], p, f.tol)) {
          ix.linked_mask[i] |= 1u << j;
          ix.linked_mask[j] |= 1u << i;
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (const Vec& p : f.sets[i]) {
      std::uint32_t mask = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (set_contains(f.sets[j], p, f.tol)) mask |= 1u << j;
      ix.point_masks.push_back(mask);
    }
  }
  return ix;
}

bool mask_linked(const FamilyIndex& ix, std::uint32_t mask) {
  for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
    const unsigned i = unsigned(std::countr_zero(rest));
    if ((mask & ~ix.linked_mask[i]) != 0) return false;
  }
  return true;
}

bool mask_centered(const FamilyIndex& ix, std::uint32_t mask) {
  for (const std::uint32_t pm : ix.point_masks)
    if ((mask & ~pm) == 0) return true;
  return false;
}

}  // namespace

LinkedResult is_linked(const Family& f) {
  if (f.sets.empty()) throw Error(ErrorCode::InvalidParams, "empty family");
  LinkedResult r;
  r.linked = true;
  for (std::size_t i = 0; i < f.sets.size(); ++i) {
    for (std::size_t j = i; j < f.sets.size(); ++j) {
      bool found = false;
      for (const Vec& p : f.sets[i]) {
        if (set_contains(f.sets[j], p, f.tol)) {
          if (i != j) r.witnesses.push_back({int(i), int(j), p});
          found = true;
          break;
        }
      }
      if (!found) {
        r.linked = false;
        r.witnesses.clear();
        return r;
      }
    }
  }
  return r;
}

CenteredResult is_centered(const Family& f) {
  if (f.sets.empty()) throw Error(ErrorCode::InvalidParams, "empty family");
  for (const Vec& p : f.sets.front()) {
    bool in_all = true;
    for (std::size_t j = 1; j < f.sets.size(); ++j)
      if (!set_contains(f.sets[j], p, f.tol)) {
        in_all = false;
        break;
      }
    if (in_all) return {true, p};
  }
  return {false, std::nullopt};
}

BinaryResult is_binary(const Family& f) {
  const std::size_t m = f.sets.size();
  if (m > 24) throw Error(ErrorCode::TooLarge, "exhaustive subfamily scan capped at 24 members");
  if (m == 0) throw Error(ErrorCode::InvalidParams, "empty family");

  const FamilyIndex ix = build_index(f);
  const std::uint32_t full = (1u << m) - 1;
  for (std::size_t size = 2; size <= m; ++size) {
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      if (std::size_t(std::popcount(mask)) != size) continue;
      if (mask_linked(ix, mask) && !mask_centered(ix, mask)) {
        BinaryResult r;
        r.binary = false;
        for (std::size_t i = 0; i < m; ++i)
          if (mask & (1u << i)) r.offending.push_back(int(i));
        return r;
      }
    }
  }
  return {true, {}};
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
}

const CheckEntry* VerificationReport::find(const std::string& name) const {
  for (const CheckEntry& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool triple_intersection_empty(const std::vector<Vec>& points, const Isometry& f, double tol) {
  std::vector<Vec> f_points, ff_points;
  f_points.reserve(points.size());
  ff_points.reserve(points.size());
  for (const Vec& p : points) {
    f_points.push_back(f.apply(p));
    ff_points.push_back(f.apply(f_points.back()));
  }
  for (const Vec& a : points)
    if (set_contains(f_points, a, tol) && set_contains(ff_points, a, tol)) return false;
  return true;
}

VerificationReport verify_certificate(const PointSet& A, const Certificate& cert, double tol) {
  const std::size_t n1 = std::size_t(A.n) + 1;
  const Isometry& f = cert.f;
  const Vec& b = cert.witness.b;
  const Vec& c = cert.frame.c;
  const Vec& a0 = cert.frame.a0;
  const Vec& a1 = cert.frame.a1;
  const Vec& a2 = cert.frame.a2;

  if (f.matrix.rows() != n1 || f.matrix.cols() != n1 || b.size() != n1 || c.size() != n1 ||
      a0.size() != n1 || a1.size() != n1 || a2.size() != n1 || !std::isfinite(cert.lambda))
    throw Error(ErrorCode::MalformedCertificate, "missing or mis-sized certificate fields");

  VerificationReport report;
  auto check = [&report](const std::string& name, double value, double threshold, bool pass) {
    report.checks.push_back({name, pass, value, threshold});
  };

  // (1) f is special orthogonal of order 3.
  const double orth = f.orthogonality_residual();
  const double det = f.matrix.determinant();
  const double order3 = f.order3_residual();
  check("special_orthogonal", std::max(orth, std::abs(det - 1.0)), tol,
        orth <= tol && std::abs(det - 1.0) <= tol);
  check("order_three", order3, tol, order3 <= tol);

  // (2) f cycles the triangle and a0, a1 belong to A.
  const double cyc = std::max(
      {distance(f.apply(a0), a1), distance(f.apply(a1), a2), distance(f.apply(a2), a0)});
  const bool members = set_contains(A.points, a0, tol) && set_contains(A.points, a1, tol);
  check("cyclic_action", cyc, tol, cyc <= tol && members);

  // (3) A lies in the closed half-space <b,x> <= 0.
  double max_b = -2.0, min_c = 2.0;
  for (const Vec& a : A.points) {
    max_b = std::max(max_b, dot(b, a));
    min_c = std::min(min_c, dot(c, a));
  }
  report.max_b_margin = max_b;
  report.min_c_margin = min_c;
  check("halfspace_b", max_b, tol, max_b <= tol);

  // (4) A lies strictly inside the open half-space <c,x> > 0.
  check("halfspace_c", min_c, tol, min_c > tol);

  // (5) the axis is fixed, hence f preserves the open half-space of c.
  const double axis = distance(f.apply(c), c);
  check("axis_fixed", axis, tol, axis <= tol);

  // (6) Farkas emptiness: c = lambda (b + f b + f^2 b) with lambda > 0. Any x
  // in the three closed half-spaces of b, f(b), f^2(b) then has <c,x> <= 0,
  // so the four half-spaces of checks (3)-(5) have empty intersection.
  const Vec fb = f.apply(b);
  const Vec ffb = f.apply(fb);
  const double farkas = distance(c, scale(cert.lambda, add(add(b, fb), ffb)));
  report.farkas_residual = farkas;
  check("farkas", farkas, tol, farkas <= tol && cert.lambda > tol);

  // (7) brute-force: the triple intersection is empty by point matching.
  const bool empty = triple_intersection_empty(A.points, f, tol);
  report.not_centered = empty;
  check("emptiness_brute_force", empty ? 0.0 : 1.0, 0.5, empty);

  // (8) {A, f(A), f^2(A)} is linked.
  Family triple;
  triple.tol = tol;
  triple.sets.resize(3);
  triple.sets[0] = A.points;
  for (const Vec& p : A.points) triple.sets[1].push_back(f.apply(p));
  for (const Vec& p : triple.sets[1]) triple.sets[2].push_back(f.apply(p));
  const LinkedResult linked = is_linked(triple);
  report.linked = linked.linked;
  report.linked_witnesses = linked.witnesses;
  check("linked", linked.linked ? 0.0 : 1.0, 0.5, linked.linked);

  return report;
}

}  // namespace knet
