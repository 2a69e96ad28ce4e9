#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "pseudoseg/arrangement.hpp"
#include "pseudoseg/census.hpp"
#include "pseudoseg/constructions.hpp"
#include "pseudoseg/errors.hpp"
#include "pseudoseg/geom_kernel.hpp"
#include "pseudoseg/setsystem.hpp"
#include "test_support.hpp"

using namespace pseudoseg;
namespace ts = pseudoseg::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fmt(double v, int prec = 3) {
  std::ostringstream s;
  s.precision(prec);
  s << std::fixed << v;
  return s.str();
}

// Runs one criterion; a criterion fails on a false assertion, an exception or
// exceeding its time limit.
bool run(int id, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && secs >= limit_s) {
    o.ok = false;
    o.detail = "time limit " + fmt(limit_s, 0) + " s exceeded";
  }
  std::cout << (o.ok ? "PASS" : "FAIL") << " " << id << " (" << fmt(secs) << " s)";
  if (!o.detail.empty()) std::cout << " " << o.detail;
  std::cout << std::endl;
  return o.ok;
}

std::uint64_t hook_length_staircase(int m) {
  std::vector<int> rows;
  for (int r = m - 1; r >= 1; --r) rows.push_back(r);
  const int cells = std::accumulate(rows.begin(), rows.end(), 0);
  long double v = 1;
  for (int i = 2; i <= cells; ++i) v *= i;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < rows[i]; ++j) {
      int below = 0;
      for (std::size_t k = i + 1; k < rows.size(); ++k) below += rows[k] > j;
      v /= (rows[i] - j - 1) + below + 1;
    }
  }
  return static_cast<std::uint64_t>(v + 0.5L);
}

std::size_t lds_dp(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> best(p.size(), 1);
  std::size_t out = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (p[j] > p[i]) best[i] = std::max(best[i], best[j] + 1);
    }
    out = std::max(out, best[i]);
  }
  return out;
}

// Random rows, optionally drawn with noise from a small pool to create
// duplicates and near-duplicates.
SetFamily fuzz_family(std::mt19937_64& rng) {
  const std::size_t n = 1 + rng() % 64, m = 1 + rng() % 256;
  std::uniform_real_distribution<double> u(0, 1);
  const double density = u(rng);
  std::vector<BitRow> pool;
  const bool pooled = rng() % 2 == 0;
  const std::size_t pool_size = 1 + rng() % 8;
  auto fresh = [&] {
    BitRow r(n);
    for (std::size_t e = 0; e < n; ++e) r.set(e, u(rng) < density);
    return r;
  };
  for (std::size_t i = 0; i < pool_size; ++i) pool.push_back(fresh());
  const double noise = u(rng) * 0.1;
  std::vector<BitRow> rows;
  for (std::size_t i = 0; i < m; ++i) {
    if (!pooled) {
      rows.push_back(fresh());
      continue;
    }
    BitRow r = pool[rng() % pool.size()];
    for (std::size_t e = 0; e < n; ++e) {
      if (u(rng) < noise) r.flip(e);
    }
    rows.push_back(r);
  }
  return SetFamily(n, std::move(rows));
}

}  // namespace

int main() {
  bool all = true;

  all &= run(1, 60, [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto g8 = build_grid(8, 2);
    std::set<BitRow> graphs;
    for (std::uint64_t bits = 0; bits < 16; ++bits) {
      const auto c = choice_from_bits(g8, bits);
      const auto f = realize_geometric(g8, c, default_grid_scale(g8));
      o.require(is_pseudosegment_family(f).ok(), "grid(8,2) realization is not a pseudo-segment family");
      const auto g = intersection_graph(f);
      o.require(g == combinatorial_graph(g8, c), "grid(8,2) geometric graph differs");
      o.require(clique_number(g) <= 2, "grid(8,2) clique number above 2");
      graphs.insert(g.canonical_encoding());
    }
    o.require(graphs.size() == 16, "grid(8,2) distinct graphs " + std::to_string(graphs.size()));
    const double small = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(small < 1.0, "grid(8,2) took " + fmt(small) + " s");

    const auto g27 = build_grid(27, 3);
    std::mt19937_64 rng(27);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto c = random_choice(g27, rng);
      const auto g = intersection_graph(realize_geometric(g27, c, default_grid_scale(g27)));
      o.require(g == combinatorial_graph(g27, c), "grid(27,3) geometric graph differs");
      o.require(clique_number(g) <= 3, "grid(27,3) clique number above 3");
    }
    const auto census = grid_census(g27, 1'000'000);
    o.require(census.count == std::uint64_t{1} << 30, "grid(27,3) census count is not 2^30");
  });

  all &= run(2, 60, [](Outcome& o) {
    for (auto [k, h] : {std::pair{2L, 2L}, std::pair{3L, 2L}, std::pair{2L, 3L}}) {
      std::uint64_t total = 1;
      for (long i = 0; i < h; ++i) total *= static_cast<std::uint64_t>(k * k * k);
      std::set<BitRow> graphs;
      for (std::uint64_t code = 0; code < total; ++code) {
        const auto f = staircase_build(staircase_params_from_index(k, h, code));
        o.require(is_pseudosegment_family(f).ok(), "staircase family is not pseudo-segments");
        const auto g = intersection_graph(f);
        o.require(two_colouring(g).has_value(), "staircase graph is not bipartite");
        graphs.insert(g.canonical_encoding());
      }
      o.require(graphs.size() == total, "staircase(" + std::to_string(k) + "," + std::to_string(h) +
                                            ") distinct graphs " + std::to_string(graphs.size()));
    }
  });

  // Criteria 3 and 4 share one fuzz corpus; 4's runtime is included in 3.
  Outcome greedy;
  std::size_t greedy_instances = 0;
  all &= run(3, 120, [&](Outcome& o) {
    std::mt19937_64 rng(3);
    double worst_envelope = 0;
    std::size_t packed = 0;
    for (int trial = 0; trial < 10'000; ++trial) {
      const auto f = fuzz_family(rng);
      const auto g = greedy_ordering(f);
      const auto c = encode(f, g);
      const auto back = decode(CodecOutput::from_bytes(c.bytes));
      o.require(same_multiset(back, f), "decode(encode) changed the multiset");
      o.require(c.bit_length <= codec_length_bound(f.n(), f.m(), g.deltas), "bit length above the exact bound");

      for (std::size_t i = 1; i < g.deltas.size(); ++i) {
        greedy.require(g.deltas[i] <= g.deltas[i - 1], "greedy deltas increase");
      }
      // every prefix of length i+2 is deltas[i]-separated: track the running
      // minimum pairwise distance as rows are appended
      std::size_t min_pair = f.n() + 1;
      for (std::size_t i = 0; i < g.deltas.size(); ++i) {
        const auto& row = f[g.order[i + 1]];
        for (std::size_t t = 0; t <= i; ++t) min_pair = std::min(min_pair, sym_diff_distance(row, f[g.order[t]]));
        greedy.require(min_pair >= g.deltas[i], "greedy prefix not separated");
      }
      if (!g.deltas.empty()) {
        std::vector<BitRow> whole;
        for (auto idx : g.order) whole.push_back(f[idx]);
        greedy.require(is_separated(SetFamily(f.n(), whole), g.deltas.back()), "greedy ordering not separated");
      }
      ++greedy_instances;

      try {
        const auto rep = packing_check(f, Rat(4), 2);
        const auto again = packing_check(f, Rat(4), 2);
        greedy.require(rep.max_ratio == again.max_ratio, "max_ratio differs between runs");
        greedy.require(rep.max_ratio.has_value() == (f.distinct_rows() > 1), "max_ratio missing");
        ++packed;
        const double envelope =
            40.0 * std::sqrt(double(f.m())) * double(f.n()) * std::log2(double(f.m()) + 1) + 128.0;
        worst_envelope = std::max(worst_envelope, double(c.bit_length) / envelope);
        o.require(double(c.bit_length) <= envelope, "bit length above the fitted envelope");
      } catch (const ShatterHypothesisFailed&) {
      }
    }
    o.detail = "packed=" + std::to_string(packed) + " max bit_length/envelope=" + fmt(worst_envelope, 4);
  });

  all &= run(4, 1e9, [&](Outcome& o) {
    o = greedy;
    o.require(greedy_instances == 10'000, "fuzz corpus incomplete");
  });

  all &= run(5, 120, [](Outcome& o) {
    std::mt19937_64 rng(5);
    std::size_t rich = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t na = 2 + rng() % 14, nb = 2 + rng() % 9;
      const auto inst = ts::random_trace_instance(rng, na, nb);
      const std::size_t z = 1 + rng() % std::min<std::size_t>(4, nb);
      const auto r = trace_bound_check(inst.a, inst.b, z);
      o.require(r.ok && r.max_primal <= (z + 1) * (2 * z + 1), "trace count above (z+1)(2z+1)");
      if (z >= 2 && r.max_primal >= z + 2) ++rich;
    }
    o.require(rich > 0, "no trial reached z+2");
    if (o.ok) o.detail = "trials reaching z+2: " + std::to_string(rich);
  });

  all &= run(6, 60, [](Outcome& o) {
    std::mt19937_64 rng(6);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t m = 10 + rng() % 91;
      const auto w = random_wiring_diagram(m, rng);
      for (const auto& wire : w.wires()) {
        const double ratio = double(zone_complexity(w, wire)) / double(m);
        worst = std::max(worst, ratio);
        o.require(ratio <= 12.0, "zone ratio above 12");
      }
    }
    if (o.ok) o.detail = "max zone/m=" + fmt(worst, 4);
  });

  all &= run(7, 120, [](Outcome& o) {
    std::mt19937_64 rng(7);
    const auto f = ts::random_grounded_segments(rng, 50);
    const auto cap = static_cast<std::size_t>(std::ceil(6.0 * 4.0 * std::log(50.0)));
    std::size_t attempts = 0, worst = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto res = weak_cutting(f, Rat(4), seed);
      attempts += res.attempts;
      worst = std::max(worst, res.max_crossing);
      o.require(res.sample.size() <= cap, "sample larger than ceil(24 ln 50)");
      for (const auto& cell : res.decomposition.cells) {
        o.require(4 * cell.crossings.size() <= 50, "cell crossed by more than 12.5 curves");
      }
    }
    const double mean = double(attempts) / 100.0;
    o.require(mean <= 5.0, "mean attempts " + fmt(mean));
    if (o.ok) o.detail = "mean attempts=" + fmt(mean) + " max crossing=" + std::to_string(worst);
  });

  all &= run(8, 60, [](Outcome& o) {
    const std::vector<std::uint64_t> expected{2, 16, 768};
    for (int m = 3; m <= 5; ++m) {
      const auto v = enumerate_full_allowable(m);
      o.require(v == expected[m - 3] && v == hook_length_staircase(m),
                "m=" + std::to_string(m) + " gave " + std::to_string(v));
    }
  });

  all &= run(9, 300, [](Outcome& o) {
    for (int n = 1; n <= 3; ++n) {
      for (int m = 1; m <= 4; ++m) {
        for (long d : {1L, 2L}) {
          const auto h = verify_h_relation(n, m, Rat(2), d);
          o.require(h.holds(), "n=" + std::to_string(n) + " m=" + std::to_string(m) + " d=" + std::to_string(d) +
                                   ": " + std::to_string(h.lhs) + " != " + std::to_string(h.rhs));
        }
      }
    }
  });

  all &= run(10, 30, [](Outcome& o) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 10'000; ++trial) {
      std::vector<std::size_t> p(1 + rng() % 50);
      std::iota(p.begin(), p.end(), 1);
      std::shuffle(p.begin(), p.end(), rng);
      o.require(dilworth_color(p).size() == lds_dp(p), "class count differs from decreasing subsequence");
    }
  });

  all &= run(11, 30, [](Outcome& o) {
    std::mt19937_64 rng(11);
    int trials = 0, skipped = 0;
    while (trials < 1000) {
      const auto throughs = ts::random_disjoint_throughs(rng, 2 + rng() % 20, 2 + rng() % 8);
      std::vector<Point> pts;
      for (const auto& x : ts::distinct_sorted(rng, 2 + rng() % 8, 0, 1, 65537)) {
        pts.push_back({x, ts::random_rat(rng, 0, 1, 65521)});
      }
      try {
        o.require(neighborhood_interval_check(MonotoneCurve("gamma", std::move(pts)), throughs),
                  "neighbourhood is not an interval");
        ++trials;
      } catch (const DegenerateError&) {
        ++skipped;
      }
    }
    if (o.ok) o.detail = "degenerate redraws=" + std::to_string(skipped);
  });

  all &= run(12, 30, [](Outcome& o) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t inner = 1 + rng() % 50, through = rng() % 11;
      auto curves = ts::random_inner_segments(rng, inner, "s").curves();
      for (std::size_t t = 0; t < through; ++t) {
        const long y = static_cast<long>(1000 + t);
        curves.push_back(ts::seg("t" + std::to_string(t), Rat(0), Rat(y), Rat(1), Rat(y)));
      }
      const CurveFamily f(std::move(curves), Strip{Rat(0), Rat(1)});
      const auto v = split_tree_violations(strip_split(f), f);
      o.require(v.empty(), v.empty() ? "" : v.front());
    }
  });

  return all ? 0 : 1;
}
