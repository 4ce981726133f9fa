#pragma once

#include <optional>
#include <string>
#include <vector>

#include "knet/construction.hpp"
#include "knet/geom.hpp"

namespace knet {

/// Finite family of finite point sets; membership and intersection are
/// decided at distance <= tol.
struct Family {
  std::vector<std::vector<Vec>> sets;
  double tol = kDefaultTol;
};

struct PairWitness {
  int i = -1;
  int j = -1;
  Vec point;  // a point of set i within tol of set j
};

struct LinkedResult {
  bool linked = false;
  std::vector<PairWitness> witnesses;  // one per unordered pair when linked
};

/// True iff every two member sets share a point at distance <= tol.
LinkedResult is_linked(const Family& f);

struct CenteredResult {
  bool centered = false;
  std::optional<Vec> witness;
};

/// True iff some point lies within tol of every member set.
CenteredResult is_centered(const Family& f);

struct BinaryResult {
  bool binary = false;
  /// Indices of a minimal (by cardinality, first found) linked subfamily
  /// with empty intersection; empty when binary.
  std::vector<int> offending;
};

/// True iff every linked subfamily is centered. Exhaustive over the 2^|F|
/// subfamilies; throws TooLarge for |F| > 24.
BinaryResult is_binary(const Family& f);

struct CheckEntry {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured residual or margin
  double threshold = 0.0;  // comparison bound
};

struct VerificationReport {
  bool linked = false;
  std::vector<PairWitness> linked_witnesses;
  bool not_centered = false;
  double farkas_residual = 0.0;
  double max_b_margin = 0.0;  // max_A <b,a>
  double min_c_margin = 0.0;  // min_A <c,a>
  std::vector<CheckEntry> checks;

  bool pass() const;
  const CheckEntry* find(const std::string& name) const;
};

/// Re-check a certificate from scratch: special orthogonality and order of f,
/// the cyclic action on the triangle, the half-space containments, the fixed
/// axis, the Farkas emptiness identity, brute-force emptiness of the triple
/// intersection, and linkedness of {A, f(A), f^2(A)}.
/// Trusts nothing recorded at construction time except the field values.
/// Throws MalformedCertificate for structurally broken input.
VerificationReport verify_certificate(const PointSet& A, const Certificate& cert,
                                      double tol = kDefaultTol);

/// Direct point-matching test that A, f(A) and f^2(A) have no common point
/// at distance tolerance tol.
bool triple_intersection_empty(const std::vector<Vec>& points, const Isometry& f, double tol);

}  // namespace knet
