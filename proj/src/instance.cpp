#include "knet/instance.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

namespace knet {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Vec json_to_vec(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidParams, "expected a coordinate array");
  Vec v;
  v.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw Error(ErrorCode::InvalidParams, "expected numeric coordinates");
    v.push_back(x.get<double>());
  }
  return v;
}

}  // namespace

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

int Rng::uniform_int(int lo, int hi) {
  return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t state = base ^ (0x9e3779b97f4a7c15ull * (index + 1));
  return splitmix64(state);
}

PointSet generate_instance(const GenerateParams& params, double tol) {
  if (params.n < 2) throw Error(ErrorCode::InvalidParams, "n must be at least 2");
  if (params.count < 2) throw Error(ErrorCode::InvalidParams, "count must be at least 2");
  if (params.cap_degrees <= 0.0 || params.cap_degrees > 25.0)
    throw Error(ErrorCode::InvalidParams, "cap_degrees must lie in (0, 25]");

  Rng rng(params.seed);
  const std::size_t dim = std::size_t(params.n) + 1;
  const double cap = params.cap_degrees * std::numbers::pi / 180.0;

  for (int attempt = 0; attempt < 1000; ++attempt) {
    // Cap center: normalized Gaussian direction.
    Vec center(dim);
    for (double& x : center) x = rng.gaussian();
    if (norm(center) < 1e-6) continue;
    center = normalized(center);

    // Tangent directions at the center.
    std::vector<Vec> seeds = {center};
    for (std::size_t k = 0; k < dim; ++k) {
      Vec e(dim, 0.0);
      e[k] = 1.0;
      seeds.push_back(e);
    }
    const auto [frame, rank] = orthonormal_basis(seeds, tol);
    if (rank != dim) continue;

    std::vector<Vec> raw;
    raw.reserve(std::size_t(params.count));
    for (int i = 0; i < params.count; ++i) {
      if (params.coplanar) {
        const double phi = rng.uniform(-cap, cap);
        raw.push_back(add(scale(std::cos(phi), center), scale(std::sin(phi), frame.basis[1])));
      } else {
        Vec dir(dim - 1);
        for (double& x : dir) x = rng.gaussian();
        if (norm(dir) < 1e-9) {
          --i;
          continue;
        }
        dir = normalized(dir);
        const double phi = rng.uniform(0.0, cap);
        Vec p = scale(std::cos(phi), center);
        for (std::size_t k = 0; k + 1 < dim; ++k)
          p = add(p, scale(std::sin(phi) * dir[k], frame.basis[k + 1]));
        raw.push_back(p);
      }
    }

    try {
      PointSet a = validate_pointset(raw, tol);
      if (a.diameter > 0.0 && a.diameter <= 1.0 + tol) return a;
    } catch (const Error&) {
      // diameter constraint violated; regenerate
    }
  }
  throw Error(ErrorCode::InvalidParams, "could not generate a valid instance");
}

Isometry random_special_orthogonal(int dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::InvalidParams, "dimension must be positive");
  while (true) {
    std::vector<Vec> cols(std::size_t(dim), Vec(std::size_t(dim)));
    for (auto& col : cols)
      for (double& x : col) x = rng.gaussian();
    const auto [space, rank] = orthonormal_basis(cols, 1e-9);
    if (rank != std::size_t(dim)) continue;
    Mat q(std::size_t(dim), std::size_t(dim));
    for (std::size_t j = 0; j < std::size_t(dim); ++j)
      for (std::size_t i = 0; i < std::size_t(dim); ++i) q(i, j) = space.basis[j][i];
    if (q.determinant() < 0.0)
      for (std::size_t i = 0; i < std::size_t(dim); ++i) q(i, 0) = -q(i, 0);
    return Isometry{std::move(q)};
  }
}

nlohmann::json instance_to_json(const PointSet& a) {
  nlohmann::json j;
  j["n"] = a.n;
  j["points"] = a.points;
  return j;
}

PointSet instance_from_json(const nlohmann::json& j, double tol) {
  if (!j.contains("n") || !j.contains("points"))
    throw Error(ErrorCode::InvalidParams, "instance file needs fields 'n' and 'points'");
  const int n = j["n"].get<int>();
  std::vector<Vec> raw;
  for (const auto& p : j["points"]) raw.push_back(json_to_vec(p));
  for (const Vec& p : raw)
    if (p.size() != std::size_t(n) + 1)
      throw Error(ErrorCode::DimensionMismatch, "point length does not match n + 1");
  return validate_pointset(raw, tol);
}

nlohmann::json certificate_to_json(const Certificate& cert, int n) {
  nlohmann::json j;
  j["n"] = n;
  j["branch"] = to_string(cert.witness.branch);
  j["a0"] = cert.frame.a0;
  j["a1"] = cert.frame.a1;
  j["a2"] = cert.frame.a2;
  j["b"] = cert.witness.b;
  j["c"] = cert.frame.c;
  j["s"] = cert.frame.s;
  j["lambda"] = cert.lambda;
  j["tol"] = cert.tol_used;
  j["f"] = cert.f.matrix.data();
  j["linked_witness_indices"] = cert.linked_witness_indices;
  j["margins"] = {
      {"lemma", cert.margins.lemma},
      {"apex", cert.margins.apex},
      {"star", cert.margins.star},
      {"halfspace_b", cert.margins.halfspace_b},
      {"halfspace_c", cert.margins.halfspace_c},
      {"b_at_a0", cert.margins.b_at_a0},
      {"farkas_residual", cert.margins.farkas_residual},
      {"cyclic_residual", cert.margins.cyclic_residual},
      {"order_residual", cert.margins.order_residual},
      {"axis_residual", cert.margins.axis_residual},
  };
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  for (const char* field : {"n", "branch", "a0", "a1", "a2", "b", "c", "s", "lambda", "tol", "f",
                            "linked_witness_indices", "margins"})
    if (!j.contains(field))
      throw Error(ErrorCode::MalformedCertificate, std::string("missing field '") + field + "'");

  Certificate cert;
  const int n = j["n"].get<int>();
  const std::size_t n1 = std::size_t(n) + 1;

  cert.frame.a0 = json_to_vec(j["a0"]);
  cert.frame.a1 = json_to_vec(j["a1"]);
  cert.frame.a2 = json_to_vec(j["a2"]);
  cert.witness.b = json_to_vec(j["b"]);
  cert.frame.c = json_to_vec(j["c"]);
  for (const Vec* v : {&cert.frame.a0, &cert.frame.a1, &cert.frame.a2, &cert.witness.b,
                       &cert.frame.c})
    if (v->size() != n1)
      throw Error(ErrorCode::MalformedCertificate, "vector length does not match n + 1");

  const std::string branch = j["branch"].get<std::string>();
  if (branch == "facet")
    cert.witness.branch = Branch::Facet;
  else if (branch == "coplanar")
    cert.witness.branch = Branch::Coplanar;
  else
    throw Error(ErrorCode::MalformedCertificate, "unknown branch tag '" + branch + "'");

  cert.witness.a0 = cert.frame.a0;
  cert.witness.a1 = cert.frame.a1;
  cert.frame.s = j["s"].get<double>();
  cert.lambda = j["lambda"].get<double>();
  cert.tol_used = j["tol"].get<double>();

  const auto flat = j["f"].get<std::vector<double>>();
  if (flat.size() != n1 * n1)
    throw Error(ErrorCode::MalformedCertificate, "isometry entry count does not match (n+1)^2");
  cert.f.matrix = Mat(n1, n1);
  cert.f.matrix.data() = flat;

  const auto indices = j["linked_witness_indices"].get<std::vector<int>>();
  if (indices.size() != 2)
    throw Error(ErrorCode::MalformedCertificate, "expected two linked witness indices");
  cert.linked_witness_indices = {indices[0], indices[1]};
  cert.witness.a0_index = indices[0];
  cert.witness.a1_index = indices[1];

  const auto& margins = j["margins"];
  auto get_margin = [&margins](const char* name) {
    if (!margins.contains(name))
      throw Error(ErrorCode::MalformedCertificate, std::string("missing margin '") + name + "'");
    return margins[name].get<double>();
  };
  cert.margins.lemma = get_margin("lemma");
  cert.margins.apex = get_margin("apex");
  cert.margins.star = get_margin("star");
  cert.margins.halfspace_b = get_margin("halfspace_b");
  cert.margins.halfspace_c = get_margin("halfspace_c");
  cert.margins.b_at_a0 = get_margin("b_at_a0");
  cert.margins.farkas_residual = get_margin("farkas_residual");
  cert.margins.cyclic_residual = get_margin("cyclic_residual");
  cert.margins.order_residual = get_margin("order_residual");
  cert.margins.axis_residual = get_margin("axis_residual");
  cert.witness.margin = cert.margins.lemma;
  return cert;
}

nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["pass"] = report.pass();
  j["linked"] = report.linked;
  j["not_centered"] = report.not_centered;
  j["farkas_residual"] = report.farkas_residual;
  j["max_b_margin"] = report.max_b_margin;
  j["min_c_margin"] = report.min_c_margin;
  j["checks"] = nlohmann::json::array();
  for (const CheckEntry& c : report.checks)
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"value", c.value},
                           {"threshold", c.threshold}});
  j["linked_witnesses"] = nlohmann::json::array();
  for (const PairWitness& w : report.linked_witnesses)
    j["linked_witnesses"].push_back({{"i", w.i}, {"j", w.j}, {"point", w.point}});
  return j;
}

std::vector<Arc> arcs_from_json(const nlohmann::json& j) {
  if (!j.contains("arcs") || !j["arcs"].is_array())
    throw Error(ErrorCode::InvalidParams, "arc file needs an 'arcs' array");
  std::vector<Arc> arcs;
  for (const auto& a : j["arcs"]) {
    if (!a.contains("center") || !a.contains("half_width"))
      throw Error(ErrorCode::InvalidParams, "each arc needs 'center' and 'half_width'");
    Arc arc{wrap_angle(a["center"].get<double>()), a["half_width"].get<double>()};
    if (arc.half_width < 0.0 || arc.half_width > std::numbers::pi)
      throw Error(ErrorCode::InvalidParams, "half_width must lie in [0, pi]");
    arcs.push_back(arc);
  }
  return arcs;
}

nlohmann::json arcs_to_json(const std::vector<Arc>& arcs) {
  nlohmann::json j;
  j["arcs"] = nlohmann::json::array();
  for (const Arc& a : arcs)
    j["arcs"].push_back({{"center", a.center}, {"half_width", a.half_width}});
  return j;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidParams, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParams, "JSON parse failure in '" + path + "': " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidParams, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace knet
