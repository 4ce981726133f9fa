#include "knet/circle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace knet {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kThirdTurn = kTwoPi / 3.0;
const double kSqrt3 = std::sqrt(3.0);

// Interval [start, start + length] on the unrolled circle, start in [0, 2pi).
struct Interval {
  double start = 0.0;
  double length = 0.0;
};

Interval to_interval(const Arc& a) {
  return {wrap_angle(a.center - a.half_width), 2.0 * a.half_width};
}

// Merge intervals on the circle. Closed intervals merge when they touch
// within tol; open intervals only when they genuinely overlap.
struct MergedSet {
  bool full_circle = false;
  std::vector<Interval> components;
};

MergedSet merge_intervals(std::vector<Interval> intervals, bool closed, double tol) {
  MergedSet out;
  const double touch = closed ? tol : -tol;
  // A closed interval within tol of full length covers the circle; an open
  // one must genuinely exceed it.
  const double full_at = closed ? kTwoPi - tol : kTwoPi + tol;
  for (const Interval& iv : intervals)
    if (iv.length >= full_at) {
      out.full_circle = true;
      return out;
    }
  if (intervals.empty()) return out;

  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.start < b.start; });
  std::vector<Interval> merged;
  for (const Interval& iv : intervals) {
    if (!merged.empty() && iv.start <= merged.back().start + merged.back().length + touch) {
      double end = std::max(merged.back().start + merged.back().length, iv.start + iv.length);
      merged.back().length = end - merged.back().start;
    } else {
      merged.push_back(iv);
    }
  }
  // Wrap-around: the last component may absorb leading ones.
  while (merged.size() > 1) {
    const Interval& first = merged.front();
    Interval& last = merged.back();
    if (first.start + kTwoPi <= last.start + last.length + touch) {
      const double end = std::max(last.start + last.length, first.start + kTwoPi + first.length);
      last.length = end - last.start;
      merged.erase(merged.begin());
    } else {
      break;
    }
  }
  if (merged.size() == 1 && merged.front().length >= full_at) {
    out.full_circle = true;
    return out;
  }
  out.components = std::move(merged);
  return out;
}

std::vector<Arc> chain_cover(double start, double length, double max_len) {
  std::vector<Arc> arcs;
  if (length <= 0.0) {
    arcs.push_back({wrap_angle(start), 0.0});
    return arcs;
  }
  const auto pieces = std::size_t(std::ceil(length / max_len));
  const double piece = length / double(pieces);
  for (std::size_t i = 0; i < pieces; ++i)
    arcs.push_back({wrap_angle(start + (double(i) + 0.5) * piece), 0.5 * piece});
  return arcs;
}

}  // namespace

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

double arc_length(const Arc& a) { return 2.0 * a.half_width; }

double chord_diameter(const Arc& a) {
  const double len = arc_length(a);
  if (len >= std::numbers::pi) return 2.0;
  return 2.0 * std::sin(0.5 * len);
}

bool f1_member(const Arc& a, double tol) { return chord_diameter(a) < kSqrt3 - tol; }

bool arc_contains(const Arc& a, double angle, double tol) {
  if (a.half_width >= std::numbers::pi) return true;
  const double diff = wrap_angle(angle - a.center);
  const double dist = std::min(diff, kTwoPi - diff);
  return dist <= a.half_width + tol;
}

bool arcs_intersect(const Arc& a, const Arc& b, double tol) {
  const double candidates[] = {a.center - a.half_width, a.center, a.center + a.half_width,
                               b.center - b.half_width, b.center, b.center + b.half_width};
  for (const double angle : candidates)
    if (arc_contains(a, angle, tol) && arc_contains(b, angle, tol)) return true;
  return false;
}

CommonPointResult arcs_common_point(const std::vector<Arc>& arcs, double tol) {
  if (arcs.empty()) throw Error(ErrorCode::InvalidParams, "empty arc family");
  for (const Arc& a : arcs)
    if (a.half_width >= std::numbers::pi)
      throw Error(ErrorCode::FullCircle, "arc covers the full circle");
  // A nonempty intersection of closed proper arcs has a boundary point that
  // is an endpoint of some member, so endpoints (plus centers, for point
  // arcs) form a complete candidate set.
  for (const Arc& a : arcs) {
    for (const double candidate :
         {a.center - a.half_width, a.center, a.center + a.half_width}) {
      bool in_all = true;
      for (const Arc& other : arcs)
        if (!arc_contains(other, candidate, tol)) {
          in_all = false;
          break;
        }
      if (in_all) return {true, wrap_angle(candidate)};
    }
  }
  return {false, std::nullopt};
}

ArcBinaryResult binary_check_arcs(const std::vector<Arc>& arcs, double tol) {
  const std::size_t m = arcs.size();
  if (m > 20) throw Error(ErrorCode::TooLarge, "exhaustive subfamily scan capped at 20 arcs");
  if (m == 0) throw Error(ErrorCode::InvalidParams, "empty arc family");

  std::vector<std::uint32_t> linked_mask(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    linked_mask[i] |= 1u << i;
    for (std::size_t j = i + 1; j < m; ++j)
      if (arcs_intersect(arcs[i], arcs[j], tol)) {
        linked_mask[i] |= 1u << j;
        linked_mask[j] |= 1u << i;
      }
  }

  const std::uint32_t full = (1u << m) - 1;
  for (std::size_t size = 2; size <= m; ++size) {
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      if (std::size_t(std::popcount(mask)) != size) continue;
      bool linked = true;
      for (std::uint32_t rest = mask; rest != 0 && linked; rest &= rest - 1)
        linked = (mask & ~linked_mask[std::size_t(std::countr_zero(rest))]) == 0;
      if (!linked) continue;
      std::vector<Arc> subfamily;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (1u << i)) subfamily.push_back(arcs[i]);
      if (!arcs_common_point(subfamily, tol).has) {
        ArcBinaryResult r;
        r.binary = false;
        for (std::size_t i = 0; i < m; ++i)
          if (mask & (1u << i)) r.offending.push_back(int(i));
        return r;
      }
    }
  }
  return {true, {}};
}

ArcBinaryResult binary_check_f1(const std::vector<Arc>& arcs, double tol) {
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (!f1_member(arcs[i], tol))
      throw Error(ErrorCode::NotInF1,
                  "arc " + std::to_string(i) + " has chord diameter >= sqrt(3)");
  return binary_check_arcs(arcs, tol);
}

std::vector<Arc> knetwork_cover(const std::vector<Arc>& k_arcs, const std::vector<Arc>& u_arcs,
                                double delta) {
  if (delta <= 0.0) throw Error(ErrorCode::InvalidParams, "delta must be positive");
  const double max_len = kThirdTurn - delta;
  if (max_len <= 0.0) throw Error(ErrorCode::InvalidParams, "delta leaves no admissible length");
  if (k_arcs.empty()) return {};

  std::vector<Interval> k_iv, u_iv;
  for (const Arc& a : k_arcs) k_iv.push_back(to_interval(a));
  for (const Arc& a : u_arcs) u_iv.push_back(to_interval(a));
  const MergedSet k = merge_intervals(std::move(k_iv), /*closed=*/true, 1e-12);
  const MergedSet u = merge_intervals(std::move(u_iv), /*closed=*/false, 1e-12);

  std::vector<Arc> cover;
  if (k.full_circle) {
    if (!u.full_circle) throw Error(ErrorCode::NotContained, "K is the full circle but U is not");
    const auto pieces = std::size_t(std::ceil(kTwoPi / max_len));
    const double piece = kTwoPi / double(pieces);
    for (std::size_t i = 0; i < pieces; ++i)
      cover.push_back({wrap_angle((double(i) + 0.5) * piece), 0.5 * piece});
    return cover;
  }

  for (const Interval& comp : k.components) {
    if (u.full_circle) {
      const auto chained = chain_cover(comp.start, comp.length, max_len);
      cover.insert(cover.end(), chained.begin(), chained.end());
      continue;
    }
    bool placed = false;
    for (const Interval& host : u.components) {
      double offset = wrap_angle(comp.start - host.start);
      if (offset > kTwoPi - 1e-12) offset = 0.0;
      if (offset + comp.length > host.length + 1e-12) continue;
      const double clearance = std::min(offset, host.length - offset - comp.length);
      if (clearance < delta)
        throw Error(ErrorCode::ClearanceTooSmall,
                    "clearance " + std::to_string(clearance) + " below delta");
      const auto chained = chain_cover(comp.start, comp.length, max_len);
      cover.insert(cover.end(), chained.begin(), chained.end());
      placed = true;
      break;
    }
    if (!placed) throw Error(ErrorCode::NotContained, "a component of K is not inside U");
  }
  return cover;
}

}  // namespace knet
