#include "knet/suite.hpp"

#include <algorithm>
#include <cmath>

#include "knet/certify.hpp"
#include "knet/construction.hpp"
#include "knet/instance.hpp"

namespace knet {
namespace {

struct InstanceOutcome {
  bool constructed = false;
  bool verified = false;
  Branch branch = Branch::Facet;
  bool brute_agrees = true;
  double farkas_residual = 0.0;
  double lambda = 0.0;
  double b_margin = -2.0;
  double abs_b_at_a0 = 0.0;
  double c_margin = 2.0;
  double lemma_margin_ratio = 0.0;
  double order_residual = 0.0;
  double orthogonality_residual = 0.0;
  double apex_closed_form_dev = 0.0;
};

InstanceOutcome run_instance(const SuiteParams& params, int index) {
  InstanceOutcome out;
  GenerateParams gen;
  gen.seed = derive_seed(params.seed, std::uint64_t(index));
  gen.n = params.n;
  gen.cap_degrees = params.cap_degrees;
  gen.coplanar = params.coplanar;
  Rng rng(derive_seed(gen.seed, 0x636f756e74ull));
  gen.count = rng.uniform_int(params.min_count, params.max_count);

  const PointSet a = generate_instance(gen, params.tol);

  Certificate cert;
  try {
    cert = construct_counterexample(a, params.tol);
  } catch (const Error&) {
    return out;
  }
  out.constructed = true;
  out.branch = cert.witness.branch;
  out.lambda = cert.lambda;

  const VerificationReport report = verify_certificate(a, cert, params.tol);
  out.verified = report.pass();
  out.farkas_residual = report.farkas_residual;
  out.b_margin = report.max_b_margin;
  out.c_margin = report.min_c_margin;
  out.abs_b_at_a0 = std::abs(dot(cert.witness.b, cert.witness.a0));
  out.order_residual = cert.f.order3_residual();
  out.orthogonality_residual = cert.f.orthogonality_residual();
  out.lemma_margin_ratio = cert.margins.lemma / (cert.frame.s / 8.0);

  if (cert.witness.branch == Branch::Facet) {
    const double s = cert.frame.s;
    const double closed_form = s * std::sqrt((3.0 - s * s) / (4.0 - s * s));
    out.apex_closed_form_dev = std::abs(dot(cert.witness.b, cert.frame.a2) - closed_form);
  }

  // Dual-certificate verdict (checks 3-6) against direct point matching.
  const bool dual = report.find("halfspace_b")->pass && report.find("halfspace_c")->pass &&
                    report.find("axis_fixed")->pass && report.find("farkas")->pass;
  const bool brute = triple_intersection_empty(a.points, cert.f, params.brute_force_tol);
  out.brute_agrees = (dual == brute);
  return out;
}

void accumulate(SuiteResult& r, const InstanceOutcome& o) {
  if (!o.constructed) return;
  r.constructed += 1;
  if (o.verified) r.verified += 1;
  if (o.branch == Branch::Facet)
    r.facet_instances += 1;
  else
    r.coplanar_instances += 1;
  if (!o.brute_agrees) r.brute_force_disagreements += 1;
  r.max_farkas_residual = std::max(r.max_farkas_residual, o.farkas_residual);
  r.min_lambda = std::min(r.min_lambda, o.lambda);
  r.max_b_margin = std::max(r.max_b_margin, o.b_margin);
  r.max_abs_b_at_a0 = std::max(r.max_abs_b_at_a0, o.abs_b_at_a0);
  r.min_c_margin = std::min(r.min_c_margin, o.c_margin);
  r.min_lemma_margin_ratio = std::min(r.min_lemma_margin_ratio, o.lemma_margin_ratio);
  r.max_order_residual = std::max(r.max_order_residual, o.order_residual);
  r.max_orthogonality_residual =
      std::max(r.max_orthogonality_residual, o.orthogonality_residual);
  r.max_apex_closed_form_dev = std::max(r.max_apex_closed_form_dev, o.apex_closed_form_dev);
}

SuiteResult fresh_result(const SuiteParams& params) {
  SuiteResult r;
  r.trials = params.trials;
  r.min_lambda = std::numeric_limits<double>::infinity();
  r.min_c_margin = std::numeric_limits<double>::infinity();
  r.min_lemma_margin_ratio = std::numeric_limits<double>::infinity();
  r.max_b_margin = -std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace

bool SuiteResult::all_passed() const {
  return constructed == trials && verified == trials && brute_force_disagreements == 0;
}

nlohmann::json SuiteResult::to_json() const {
  return {
      {"trials", trials},
      {"constructed", constructed},
      {"verified", verified},
      {"facet_instances", facet_instances},
      {"coplanar_instances", coplanar_instances},
      {"brute_force_disagreements", brute_force_disagreements},
      {"max_farkas_residual", max_farkas_residual},
      {"min_lambda", min_lambda},
      {"max_b_margin", max_b_margin},
      {"max_abs_b_at_a0", max_abs_b_at_a0},
      {"min_c_margin", min_c_margin},
      {"min_lemma_margin_ratio", min_lemma_margin_ratio},
      {"max_order_residual", max_order_residual},
      {"max_orthogonality_residual", max_orthogonality_residual},
      {"max_apex_closed_form_dev", max_apex_closed_form_dev},
      {"pass", all_passed()},
  };
}

SuiteResult run_suite_serial(const SuiteParams& params) {
  SuiteResult result = fresh_result(params);
  for (int i = 0; i < params.trials; ++i) accumulate(result, run_instance(params, i));
  return result;
}

SuiteResult run_suite_parallel(const SuiteParams& params) {
  SuiteResult result = fresh_result(params);
#ifdef _OPENMP
#pragma omp parallel
  {
    SuiteResult local = fresh_result(params);
#pragma omp for schedule(dynamic, 8) nowait
    for (int i = 0; i < params.trials; ++i) accumulate(local, run_instance(params, i));
#pragma omp critical(knet_suite_merge)
    {
      result.constructed += local.constructed;
      result.verified += local.verified;
      result.facet_instances += local.facet_instances;
      result.coplanar_instances += local.coplanar_instances;
      result.brute_force_disagreements += local.brute_force_disagreements;
      result.max_farkas_residual = std::max(result.max_farkas_residual, local.max_farkas_residual);
      result.min_lambda = std::min(result.min_lambda, local.min_lambda);
      result.max_b_margin = std::max(result.max_b_margin, local.max_b_margin);
      result.max_abs_b_at_a0 = std::max(result.max_abs_b_at_a0, local.max_abs_b_at_a0);
      result.min_c_margin = std::min(result.min_c_margin, local.min_c_margin);
      result.min_lemma_margin_ratio =
          std::min(result.min_lemma_margin_ratio, local.min_lemma_margin_ratio);
      result.max_order_residual = std::max(result.max_order_residual, local.max_order_residual);
      result.max_orthogonality_residual =
          std::max(result.max_orthogonality_residual, local.max_orthogonality_residual);
      result.max_apex_closed_form_dev =
          std::max(result.max_apex_closed_form_dev, local.max_apex_closed_form_dev);
    }
  }
#else
  for (int i = 0; i < params.trials; ++i) accumulate(result, run_instance(params, i));
#endif
  return result;
}

SuiteResult run_suite(const SuiteParams& params, bool parallel) {
  return parallel ? run_suite_parallel(params) : run_suite_serial(params);
}

}  // namespace knet
