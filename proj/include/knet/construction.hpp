#pragma once

#include <array>
#include <vector>

#include "knet/geom.hpp"

namespace knet {

/// Finite subset of the unit sphere S^n with diameter in (0, 1].
struct PointSet {
  int n = 0;                // sphere dimension; points live in R^{n+1}
  std::vector<Vec> points;  // unit norm, pairwise distinct
  double diameter = 0.0;
};

/// Normalize, deduplicate and check the sphere and diameter constraints.
/// Throws NotOnSphere, DiamZero or DiamTooLarge.
PointSet validate_pointset(const std::vector<Vec>& raw, double tol = kDefaultTol);

enum class Branch { Facet, Coplanar };

const char* to_string(Branch branch);

/// Witness of the supporting-functional lemma: a unit vector b with
/// <b,a0> = 0 = max_A <b,a> together with a second point a1 of A satisfying
/// <b,a1> > -1/2 ||a1 - a0||.
struct LemmaWitness {
  Vec a0, a1, b;
  int a0_index = -1;
  int a1_index = -1;
  Branch branch = Branch::Facet;
  double margin = 0.0;  // <b,a1> + 1/2 ||a1 - a0||
};

/// Find a lemma witness. Dispatches on d = rank span(A): supporting-facet
/// enumeration for d >= 3, the tilted in-plane normal for d = 2.
LemmaWitness lemma1_witness(const PointSet& A, double tol = kDefaultTol);

/// The unit point a2 in span(b,a0,a1) completing {a0,a1} to an equilateral
/// triangle on the positive side of b. Throws DegenerateSpan, NoRealRoot.
Vec apex_point(const LemmaWitness& w, double tol = kDefaultTol);

/// Equilateral triangle, its center and the 3-space it spans.
struct TriangleFrame {
  Vec a0, a1, a2;
  Vec c;          // (a0 + a1 + a2) / 3
  double s = 0.0;  // side length ||a1 - a0||
  Subspace L;     // orthonormalized span(b, a0, a1), dim 3
};

/// Assemble and check the frame: <b,a2> > s/2 and <b,c> > 0 with margins.
/// Throws StarInequalityViolated on numerical failure upstream.
TriangleFrame triangle_frame(const LemmaWitness& w, const Vec& a2, double tol = kDefaultTol);

/// Order-3 rotation of L about the axis through c, mapping a0 -> a1 -> a2 -> a0,
/// extended by the identity on the orthogonal complement. The frame may be
/// embedded into a larger ambient R^{n+1} by zero padding.
Isometry build_isometry(const TriangleFrame& frame, int n, double tol = kDefaultTol);

/// Residuals and margins recorded at construction time and recomputed by the
/// verifier.
struct CertificateMargins {
  double lemma = 0.0;            // <b,a1> + s/2
  double apex = 0.0;             // <b,a2> - s/2
  double star = 0.0;             // <b,c>
  double halfspace_b = 0.0;      // max_A <b,a>
  double halfspace_c = 0.0;      // min_A <c,a>
  double b_at_a0 = 0.0;          // <b,a0>
  double farkas_residual = 0.0;  // ||c - lambda (b + f b + f^2 b)||
  double cyclic_residual = 0.0;  // max of ||f a0 - a1||, ||f a1 - a2||, ||f a2 - a0||
  double order_residual = 0.0;   // ||f^3 - I||_max
  double axis_residual = 0.0;    // ||f c - c||
};

/// Everything needed to re-verify that {A, f(A), f^2(A)} is linked but has
/// empty triple intersection, independent of how it was built.
struct Certificate {
  Isometry f;
  LemmaWitness witness;
  TriangleFrame frame;
  double lambda = 0.0;  // Farkas coefficient ||c||^2 / (3 <b,c>)
  std::array<int, 2> linked_witness_indices = {-1, -1};  // indices of a0, a1 in A
  double tol_used = kDefaultTol;
  CertificateMargins margins;
};

/// Full pipeline: witness, apex, frame, isometry, Farkas coefficient.
Certificate construct_counterexample(const PointSet& A, double tol = kDefaultTol);

}  // namespace knet
