#pragma once

#include <optional>
#include <vector>

#include "knet/geom.hpp"

namespace knet {

/// Closed circular arc on S^1: angles within half_width of center.
struct Arc {
  double center = 0.0;      // radians, normalized to [0, 2*pi)
  double half_width = 0.0;  // in [0, pi]; angular length is 2 * half_width
};

/// Normalize an angle to [0, 2*pi).
double wrap_angle(double a);

double arc_length(const Arc& a);

/// Largest chord between two points of the arc: 2 sin(length/2) for length
/// <= pi, otherwise 2.
double chord_diameter(const Arc& a);

/// Membership of the family of closed connected subsets of chord diameter
/// strictly below sqrt(3), equivalently angular length below 2*pi/3.
bool f1_member(const Arc& a, double tol = kDefaultTol);

bool arc_contains(const Arc& a, double angle, double tol = kDefaultTol);

bool arcs_intersect(const Arc& a, const Arc& b, double tol = kDefaultTol);

struct CommonPointResult {
  bool has = false;
  std::optional<double> angle;
};

/// Whether all arcs share a point. Candidates are the arcs' endpoints and
/// centers, which is complete for closed arcs that are not the full circle.
/// Throws FullCircle when some arc has half_width >= pi.
CommonPointResult arcs_common_point(const std::vector<Arc>& arcs, double tol = kDefaultTol);

struct ArcBinaryResult {
  bool binary = false;
  std::vector<int> offending;  // empty when binary
};

/// Exhaustively check that every linked subfamily has a common point, without
/// any membership gate. Throws TooLarge for more than 20 arcs.
ArcBinaryResult binary_check_arcs(const std::vector<Arc>& arcs, double tol = kDefaultTol);

/// binary_check_arcs behind the membership gate: every arc must satisfy
/// f1_member, otherwise NotInF1 is thrown.
ArcBinaryResult binary_check_f1(const std::vector<Arc>& arcs, double tol = kDefaultTol);

/// Cover a compact K (union of closed arcs) sandwiched between K and an open
/// U (union of open arcs) by finitely many closed arcs of angular length at
/// most 2*pi/3 - delta, by greedy chaining along each component of K.
/// Throws NotContained and ClearanceTooSmall.
std::vector<Arc> knetwork_cover(const std::vector<Arc>& k_arcs, const std::vector<Arc>& u_arcs,
                                double delta = 1e-6);

}  // namespace knet
