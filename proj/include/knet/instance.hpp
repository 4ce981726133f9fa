#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "knet/certify.hpp"
#include "knet/circle.hpp"
#include "knet/construction.hpp"
#include "knet/geom.hpp"

namespace knet {

/// Deterministic generator: splitmix64 stream, platform independent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform01();                       // [0, 1)
  double uniform(double lo, double hi);     // [lo, hi)
  double gaussian();                        // standard normal, Box-Muller
  int uniform_int(int lo, int hi);          // inclusive bounds

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Derive an independent per-instance seed from a base seed and an index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct GenerateParams {
  std::uint64_t seed = 0;
  int n = 2;
  int count = 8;
  double cap_degrees = 25.0;
  bool coplanar = false;
};

/// Sample `count` points inside a random spherical cap of the given angular
/// radius, regenerating until the diameter lands in (0, 1]. Deterministic for
/// a fixed seed. Throws InvalidParams.
PointSet generate_instance(const GenerateParams& params, double tol = kDefaultTol);

/// Haar-ish random element of SO(dim) by Gram-Schmidt on a Gaussian matrix.
Isometry random_special_orthogonal(int dim, Rng& rng);

// JSON schemas. Floating point values survive a serialize/parse round trip
// bit for bit.
nlohmann::json instance_to_json(const PointSet& a);
PointSet instance_from_json(const nlohmann::json& j, double tol = kDefaultTol);

nlohmann::json certificate_to_json(const Certificate& cert, int n);
Certificate certificate_from_json(const nlohmann::json& j);  // throws MalformedCertificate

nlohmann::json report_to_json(const VerificationReport& report);

std::vector<Arc> arcs_from_json(const nlohmann::json& j);
nlohmann::json arcs_to_json(const std::vector<Arc>& arcs);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace knet
