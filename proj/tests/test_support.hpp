#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pseudoseg/geom_kernel.hpp"

namespace pseudoseg::testing {

inline MonotoneCurve seg(const std::string& id, Rat x1, Rat y1, Rat x2, Rat y2) {
  return MonotoneCurve(id, {{std::move(x1), std::move(y1)}, {std::move(x2), std::move(y2)}});
}

inline MonotoneCurve poly(const std::string& id, const std::vector<std::pair<long, long>>& pts) {
  std::vector<Point> v;
  for (auto [x, y] : pts) v.push_back({Rat(x), Rat(y)});
  return MonotoneCurve(id, std::move(v));
}

/// Uniform rational num/den with num in [lo*den, hi*den].
inline Rat random_rat(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> d(lo * den, hi * den);
  return Rat(d(rng), den);
}

/// `count` distinct sorted rationals with the given denominator inside (lo, hi).
inline std::vector<Rat> distinct_sorted(std::mt19937_64& rng, std::size_t count, long lo, long hi,
                                        long den) {
  std::set<long> nums;
  std::uniform_int_distribution<long> d(lo * den + 1, hi * den - 1);
  while (nums.size() < count) nums.insert(d(rng));
  std::vector<Rat> out;
  for (long v : nums) out.emplace_back(v, den);
  return out;
}

/// `m` random straight segments from (0, y) to (1, y') with distinct ground
/// heights; all pairwise crossing abscissae are checked distinct by
/// regenerating on collision.
CurveFamily random_grounded_segments(std::mt19937_64& rng, std::size_t m, long den = 100003);

/// `count` pairwise disjoint polylines spanning [0,1], listed bottom to top.
CurveFamily random_disjoint_throughs(std::mt19937_64& rng, std::size_t count, std::size_t columns);

/// `count` straight segments with both endpoints strictly inside the strip
/// (0,1) and all endpoint abscissae distinct; labels prefix0, prefix1, ...
CurveFamily random_inner_segments(std::mt19937_64& rng, std::size_t count, const std::string& prefix,
                                  long den = 100019);

/// A double-grounded family `a` on [0,1] together with inner segments `b`,
/// regenerated until every pair is in general position.
struct TraceInstance {
  CurveFamily a;
  CurveFamily b;
};
TraceInstance random_trace_instance(std::mt19937_64& rng, std::size_t na, std::size_t nb);

}  // namespace pseudoseg::testing
