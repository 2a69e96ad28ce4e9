#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "pseudoseg/census.hpp"
#include "pseudoseg/constructions.hpp"
#include "pseudoseg/errors.hpp"
#include "test_support.hpp"

using namespace pseudoseg;
using pseudoseg::testing::seg;

namespace {

// Longest strictly decreasing subsequence by O(t^2) dynamic programming.
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

CurveFamily rescaled_into_unit_strip(const CurveFamily& f) {
  Rat lo = f[0].front().x, hi = f[0].back().x;
  for (const auto& c : f.curves()) {
    lo = std::min(lo, c.front().x);
    hi = std::max(hi, c.back().x);
  }
  const Rat span = (hi - lo) * Rat(5, 4);
  const Rat shift = (hi - lo) / Rat(8);
  std::vector<MonotoneCurve> out;
  for (const auto& c : f.curves()) {
    std::vector<Point> pts;
    for (const auto& v : c.vertices()) pts.push_back({(v.x - lo + shift) / span, v.y});
    out.emplace_back(c.id(), std::move(pts));
  }
  return CurveFamily(std::move(out), Strip{Rat(0), Rat(1)});
}

// Segment labels and endpoints spread over (0,1), plus `through` spanning curves.
CurveFamily random_split_family(std::mt19937_64& rng, std::size_t inner, std::size_t through) {
  auto f = pseudoseg::testing::random_inner_segments(rng, inner, "s");
  auto curves = f.curves();
  for (std::size_t t = 0; t < through; ++t) {
    curves.push_back(seg("t" + std::to_string(t), Rat(0), Rat(static_cast<long>(100 + t)), Rat(1),
                         Rat(static_cast<long>(100 + t))));
  }
  return CurveFamily(std::move(curves), Strip{Rat(0), Rat(1)});
}

}  // namespace

TEST(StripSplit, ThroughCurvesOnly) {
  const CurveFamily f({seg("a", Rat(0), Rat(0), Rat(1), Rat(1)), seg("b", Rat(0), Rat(1), Rat(1), Rat(0))});
  const auto t = strip_split(f);
  ASSERT_EQ(t.nodes.size(), 1u);
  EXPECT_TRUE(t.nodes[0].leaf());
  EXPECT_EQ(t.nodes[0].p, 0u);
  EXPECT_EQ(t.nodes[0].through, (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(t.nodes[0].endpoint.empty());
  EXPECT_TRUE(split_tree_violations(t, f).empty());
}

TEST(StripSplit, FourInteriorSegments) {
  const CurveFamily f({seg("a", Rat(1, 10), Rat(0), Rat(2, 10), Rat(1)), seg("b", Rat(3, 10), Rat(0), Rat(6, 10), Rat(2)),
                       seg("c", Rat(4, 10), Rat(5), Rat(8, 10), Rat(6)), seg("d", Rat(5, 10), Rat(9), Rat(9, 10), Rat(9))},
                      Strip{Rat(0), Rat(1)});
  const auto t = strip_split(f);
  EXPECT_EQ(t.nodes[0].p, 8u);
  ASSERT_FALSE(t.nodes[0].leaf());
  EXPECT_LE(t.nodes[*t.nodes[0].left].p, 4u);
  EXPECT_LE(t.nodes[*t.nodes[0].right].p, 4u);
  EXPECT_EQ(t.nodes[*t.nodes[0].left].strip.x1, Rat(4, 10));
  EXPECT_TRUE(split_tree_violations(t, f).empty());
  EXPECT_LE(t.depth(), 4u);
}

TEST(StripSplit, StaircaseFixture) {
  // horizontals with distinct choices so that no endpoint abscissae collide
  const auto f = rescaled_into_unit_strip(staircase_build(StaircaseParams{2, {{1, 1, 1}, {2, 2, 2}}}));
  const auto t = strip_split(f);
  EXPECT_EQ(t.nodes[0].p, 2 * f.size());
  EXPECT_TRUE(split_tree_violations(t, f).empty());
}

TEST(StripSplit, SharedEndpointRejected) {
  const CurveFamily f({seg("a", Rat(1, 4), Rat(0), Rat(1, 2), Rat(1)), seg("b", Rat(1, 2), Rat(5), Rat(3, 4), Rat(6))},
                      Strip{Rat(0), Rat(1)});
  EXPECT_THROW(strip_split(f), SharedEndpointX);
}

TEST(StripSplit, RandomFamiliesSatisfyInvariants) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_split_family(rng, 1 + rng() % 30, rng() % 5);
    const auto t = strip_split(f);
    EXPECT_TRUE(split_tree_violations(t, f).empty());
    // every leaf has at most one interior endpoint and the leaves tile [0,1]
    std::vector<Strip> leaves;
    for (const auto& n : t.nodes) {
      if (n.leaf()) {
        EXPECT_LE(n.p, 1u);
        leaves.push_back(n.strip);
      }
    }
    std::sort(leaves.begin(), leaves.end(), [](const auto& a, const auto& b) { return a.x0 < b.x0; });
    EXPECT_EQ(leaves.front().x0, Rat(0));
    EXPECT_EQ(leaves.back().x1, Rat(1));
    for (std::size_t i = 1; i < leaves.size(); ++i) EXPECT_EQ(leaves[i].x0, leaves[i - 1].x1);
  }
}

TEST(StripSplit, ViolationsAreDetected) {
  std::mt19937_64 rng(5);
  const auto f = random_split_family(rng, 6, 2);
  auto t = strip_split(f);
  t.nodes[0].through.pop_back();
  EXPECT_FALSE(split_tree_violations(t, f).empty());
}

TEST(DilworthColor, Examples) {
  EXPECT_EQ(dilworth_color({1, 2, 3, 4}).size(), 1u);
  const auto c = dilworth_color({2, 1, 4, 3});
  EXPECT_EQ(c, (std::vector<std::vector<std::size_t>>{{1, 3}, {2, 4}}));
  EXPECT_EQ(dilworth_color({4, 3, 2, 1}).size(), 4u);
  EXPECT_TRUE(dilworth_color({}).empty());
  EXPECT_THROW(dilworth_color({1, 1}), InvalidInput);
  EXPECT_THROW(dilworth_color({0, 1}), InvalidInput);
}

TEST(DilworthColor, ClassesAreIncreasingAndMinimum) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::size_t> p(1 + rng() % 40);
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), rng);
    const auto classes = dilworth_color(p);
    EXPECT_EQ(classes.size(), lds_dp(p));
    std::vector<bool> covered(p.size(), false);
    for (const auto& cls : classes) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        EXPECT_FALSE(covered[cls[i] - 1]);
        covered[cls[i] - 1] = true;
        if (i > 0) {
          EXPECT_LT(cls[i - 1], cls[i]);
          EXPECT_LT(p[cls[i - 1] - 1], p[cls[i] - 1]);
        }
      }
    }
    EXPECT_TRUE(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }));
  }
}

TEST(ThroughPermutation, ClassesAreNonCrossing) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = pseudoseg::testing::random_grounded_segments(rng, 3 + rng() % 10);
    const auto perm = through_permutation(f);
    const auto g = intersection_graph(f);
    EXPECT_EQ(dilworth_color(perm).size(), clique_number(g));
  }
}

TEST(TraceBound, SingleCurve) {
  std::mt19937_64 rng(2);
  const auto inst = pseudoseg::testing::random_trace_instance(rng, 5, 4);
  const auto r = trace_bound_check(inst.a, inst.b, 1);
  EXPECT_LE(r.max_primal, 2u);
  EXPECT_EQ(r.bound, 6u);
  EXPECT_TRUE(r.ok);
}

TEST(TraceBound, RandomInstances) {
  std::mt19937_64 rng(44);
  bool saw_rich = false;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t na = 2 + rng() % 14, nb = 2 + rng() % 9;
    const auto inst = pseudoseg::testing::random_trace_instance(rng, na, nb);
    const std::size_t z = 1 + rng() % std::min<std::size_t>(4, nb);
    const auto r = trace_bound_check(inst.a, inst.b, z);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.bound, (z + 1) * (2 * z + 1));
    if (z >= 2 && r.max_primal >= z + 2) saw_rich = true;
  }
  EXPECT_TRUE(saw_rich);
}

TEST(TraceBound, DualDirection) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 8; ++trial) {
    const auto inst = pseudoseg::testing::random_trace_instance(rng, 6, 8);
    const std::size_t z = 1 + trial % 3;
    const auto r = dual_trace_bound_check(inst.a, inst.b, z);
    EXPECT_TRUE(r.ok);
    EXPECT_LE(r.max_patterns, std::size_t{1} << z);
    EXPECT_LE(r.max_cells, z + 1 + 3 * z * (z - 1) / 2);
  }
}

TEST(TraceBound, Preconditions) {
  std::mt19937_64 rng(3);
  const auto inst = pseudoseg::testing::random_trace_instance(rng, 3, 2);
  EXPECT_THROW(trace_bound_check(inst.a, inst.b, 3), BadParams);
  const CurveFamily outside({seg("x", Rat(1, 2), Rat(0), Rat(2), Rat(0))});
  EXPECT_THROW(trace_bound_check(inst.a, outside, 1), InvalidInput);
  const CurveFamily ungrounded({seg("u", Rat(0), Rat(0), Rat(1), Rat(0)), seg("v", Rat(1, 2), Rat(3), Rat(1), Rat(3))});
  EXPECT_THROW(trace_bound_check(ungrounded, inst.b, 1), NotDoubleGrounded);
}

TEST(EnumerateDoubleGrounded, Examples) {
  EXPECT_EQ(enumerate_double_grounded(2).graph_count, 2u);
  const auto c3 = enumerate_double_grounded(3);
  EXPECT_EQ(c3.graph_count, 8u);
  EXPECT_GE(c3.class_count, c3.graph_count);
  EXPECT_EQ(enumerate_double_grounded(1).graph_count, 1u);
  EXPECT_THROW(enumerate_double_grounded(5), TooLarge);
}

TEST(EnumerateDoubleGrounded, MatchesPermutationPairOracle) {
  for (int m = 1; m <= 4; ++m) {
    // Graphs: pairs whose relative order differs between a left order and a
    // right order, over all pairs of orders.
    std::vector<int> left(static_cast<std::size_t>(m));
    std::iota(left.begin(), left.end(), 0);
    std::set<std::vector<bool>> graphs;
    do {
      std::vector<int> right = left;
      std::sort(right.begin(), right.end());
      do {
        std::vector<int> lp(left.size()), rp(left.size());
        for (std::size_t i = 0; i < left.size(); ++i) {
          lp[static_cast<std::size_t>(left[i])] = static_cast<int>(i);
          rp[static_cast<std::size_t>(right[i])] = static_cast<int>(i);
        }
        std::vector<bool> g;
        for (int a = 0; a < m; ++a) {
          for (int b = a + 1; b < m; ++b) g.push_back((lp[a] < lp[b]) != (rp[a] < rp[b]));
        }
        graphs.insert(g);
      } while (std::next_permutation(right.begin(), right.end()));
    } while (std::next_permutation(left.begin(), left.end()));
    const auto c = enumerate_double_grounded(m);
    EXPECT_EQ(c.graph_count, graphs.size()) << m;
    if (m <= 3) EXPECT_EQ(c.graph_count, std::uint64_t{1} << (m * (m - 1) / 2));
  }
  const auto a = enumerate_double_grounded(4), b = enumerate_double_grounded(4);
  EXPECT_EQ(a.graph_count, b.graph_count);
  EXPECT_EQ(a.class_count, b.class_count);
}

TEST(VerifyHRelation, Examples) {
  EXPECT_TRUE(verify_h_relation(1, 2, Rat(2), 1).holds());
  EXPECT_TRUE(verify_h_relation(2, 2, Rat(2), 2).holds());
  const auto zero = verify_h_relation(2, 3, Rat(1, 2), 1);
  EXPECT_EQ(zero.lhs, 0u);
  EXPECT_EQ(zero.rhs, 0u);
  // n = 1, m = 2: multisets {{},{}}, {{},{1}}, {{1},{1}} all have pi(1) <= 2
  EXPECT_EQ(verify_h_relation(1, 2, Rat(2), 1).lhs, 3u);
  EXPECT_THROW(verify_h_relation(4, 2, Rat(2), 1), TooLarge);
}

TEST(VerifyHRelation, HoldsOnTinyRange) {
  for (int n = 1; n <= 2; ++n) {
    for (int m = 1; m <= 4; ++m) {
      for (long d = 1; d <= 2; ++d) EXPECT_TRUE(verify_h_relation(n, m, Rat(2), d).holds()) << n << m << d;
    }
  }
}

TEST(BoundTable, EmptySpecGivesHeaderOnly) {
  std::ostringstream s;
  bound_table(nlohmann::json::object(), s);
  EXPECT_EQ(s.str(), "family,n,k,log2_count,exponent_model,fitted_constant\n");
  EXPECT_THROW(bound_table(nlohmann::json{{"bogus", nlohmann::json::array()}}, s), InvalidInput);
}

TEST(BoundTable, GridAndStaircaseRows) {
  const auto experiment = nlohmann::json::parse(
      R"({"grid":[[8,2],[27,3],[64,4]],"staircase":[[2,2],[2,3],[2,4],[3,2],[3,3],[3,4]],"double_grounded":[3]})");
  std::ostringstream s;
  bound_table(experiment, s);
  std::istringstream in(s.str());
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string col;
    while (std::getline(ls, col, ',')) cols.push_back(col);
    if (!line.empty() && line.back() == ',') cols.emplace_back();
    rows.push_back(cols);
  }
  ASSERT_EQ(rows.size(), 10u);
  const std::vector<std::pair<long, long>> grids{{8, 2}, {27, 3}, {64, 4}};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(rows[i][0], "grid");
    EXPECT_EQ(std::stod(rows[i][3]), double(build_grid(grids[i].first, grids[i].second).total_incidences()));
    EXPECT_EQ(rows[i][4], "k*n");
  }
  const std::vector<std::pair<long, long>> stairs{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {3, 4}};
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& r = rows[3 + i];
    EXPECT_EQ(r[0], "staircase");
    EXPECT_NEAR(std::stod(r[3]), 3.0 * double(stairs[i].second) * std::log2(double(stairs[i].first)), 1e-8);
  }
  EXPECT_EQ(rows[9][0], "double_grounded");
  EXPECT_EQ(std::stod(rows[9][3]), 3.0);
}
