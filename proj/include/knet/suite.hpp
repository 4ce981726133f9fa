#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "knet/geom.hpp"

namespace knet {

struct SuiteParams {
  std::uint64_t seed = 0;
  int n = 2;
  int trials = 1000;
  int min_count = 2;
  int max_count = 50;
  double cap_degrees = 25.0;
  double tol = kDefaultTol;
  bool coplanar = false;
  double brute_force_tol = 1e-6;
};

/// Order-insensitive aggregate over independently seeded instances, so the
/// serial and parallel runners produce identical results.
struct SuiteResult {
  int trials = 0;
  int constructed = 0;
  int verified = 0;
  int facet_instances = 0;
  int coplanar_instances = 0;
  int brute_force_disagreements = 0;
  double max_farkas_residual = 0.0;
  double min_lambda = 0.0;
  double max_b_margin = 0.0;       // max over instances of max_A <b,a>
  double max_abs_b_at_a0 = 0.0;
  double min_c_margin = 0.0;       // min over instances of min_A <c,a>
  double min_lemma_margin_ratio = 0.0;  // min of margin / (s/8)
  double max_order_residual = 0.0;
  double max_orthogonality_residual = 0.0;
  double max_apex_closed_form_dev = 0.0;  // facet instances only

  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// Run `trials` construct-and-verify rounds on seeded random instances.
/// Instance i uses the derived seed derive_seed(seed, i) and a point count
/// drawn from [min_count, max_count], so results do not depend on execution
/// order. The parallel path distributes instances over OpenMP threads; the
/// serial path is the reference the parallel one is tested against.
SuiteResult run_suite_serial(const SuiteParams& params);
SuiteResult run_suite_parallel(const SuiteParams& params);
SuiteResult run_suite(const SuiteParams& params, bool parallel);

}  // namespace knet
