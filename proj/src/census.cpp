#include "pseudoseg/census.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "pseudoseg/arrangement.hpp"
#include "pseudoseg/constructions.hpp"
#include "pseudoseg/errors.hpp"
#include "pseudoseg/setsystem.hpp"

namespace pseudoseg {

std::size_t SplitTree::depth() const {
  std::size_t d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

std::size_t SplitTree::leaves() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const auto& n) { return n.leaf(); }));
}

namespace {

Strip family_strip(const CurveFamily& f) {
  if (f.strip()) return *f.strip();
  if (f.empty()) throw InvalidInput("strip split: empty family without a strip");
  Rat lo = f[0].front().x, hi = f[0].back().x;
  for (const auto& c : f.curves()) {
    lo = std::min(lo, c.front().x);
    hi = std::max(hi, c.back().x);
  }
  return Strip{lo, hi};
}

bool inside(const Rat& x, const Strip& s) { return s.x0 < x && x < s.x1; }

// Through-curves, endpoint curves and interior endpoint abscissae of a strip.
struct Classified {
  std::vector<std::string> through;
  std::vector<std::string> endpoint;
  std::vector<Rat> xs;
};

Classified classify(const CurveFamily& f, const Strip& s) {
  Classified c;
  for (const auto& curve : f.curves()) {
    const bool a = inside(curve.front().x, s), b = inside(curve.back().x, s);
    if (a) c.xs.push_back(curve.front().x);
    if (b) c.xs.push_back(curve.back().x);
    if (a || b) {
      c.endpoint.push_back(curve.id());
    } else if (curve.front().x <= s.x0 && s.x1 <= curve.back().x) {
      c.through.push_back(curve.id());
    }
  }
  std::sort(c.xs.begin(), c.xs.end());
  return c;
}

std::size_t ceil_half(std::size_t p) { return (p + 1) / 2; }

std::size_t depth_bound(std::size_t p) { return p <= 1 ? 1 : ceil_log2(p) + 1; }

}  // namespace

SplitTree strip_split(const CurveFamily& f) {
  const Strip root = family_strip(f);
  for (const auto& c : f.curves()) {
    if (c.front().x < root.x0 || root.x1 < c.back().x) {
      throw InvalidInput("strip split: curve '" + c.id() + "' leaves the strip");
    }
  }
  {
    const auto all = classify(f, root).xs;
    for (std::size_t i = 1; i < all.size(); ++i) {
      if (all[i] == all[i - 1]) throw SharedEndpointX("two endpoints share x = " + all[i].str());
    }
  }
  SplitTree t;
  std::function<std::size_t(const Strip&, std::size_t)> build = [&](const Strip& s, std::size_t depth) {
    auto c = classify(f, s);
    const std::size_t id = t.nodes.size();
    t.nodes.push_back(SplitNode{s, std::move(c.through), std::move(c.endpoint), c.xs.size(), depth, {}, {}});
    if (c.xs.size() > 1) {
      const Rat mid = c.xs[ceil_half(c.xs.size()) - 1];
      const std::size_t l = build(Strip{s.x0, mid}, depth + 1);
      const std::size_t r = build(Strip{mid, s.x1}, depth + 1);
      t.nodes[id].left = l;
      t.nodes[id].right = r;
    }
    return id;
  };
  build(root, 1);
  return t;
}

std::vector<std::string> split_tree_violations(const SplitTree& t, const CurveFamily& f) {
  std::vector<std::string> bad;
  if (t.nodes.empty()) return {"empty tree"};
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const std::size_t p_root = t.nodes[0].p;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    const std::string at = "node " + std::to_string(i) + ": ";
    auto c = classify(f, n.strip);
    if (sorted(n.through) != sorted(c.through)) bad.push_back(at + "through-curves misclassified");
    if (sorted(n.endpoint) != sorted(c.endpoint)) bad.push_back(at + "endpoint curves misclassified");
    if (n.p != c.xs.size()) bad.push_back(at + "endpoint count wrong");
    // every curve meeting the open strip is classified exactly once
    for (const auto& curve : f.curves()) {
      const bool meets = curve.front().x < n.strip.x1 && n.strip.x0 < curve.back().x;
      const auto id = curve.id();
      const bool in_a = std::count(n.through.begin(), n.through.end(), id) > 0;
      const bool in_b = std::count(n.endpoint.begin(), n.endpoint.end(), id) > 0;
      if (meets != (in_a || in_b) || (in_a && in_b)) bad.push_back(at + "curve '" + id + "' not covered exactly once");
    }
    if (n.leaf() != (n.p <= 1)) bad.push_back(at + "leaf iff p <= 1 violated");
    if (!n.leaf()) {
      if (!n.right) {
        bad.push_back(at + "missing right child");
        continue;
      }
      const auto& l = t.nodes[*n.left];
      const auto& r = t.nodes[*n.right];
      if (l.p > ceil_half(n.p) || r.p > ceil_half(n.p)) bad.push_back(at + "children do not halve the endpoint count");
      if (!(l.strip.x0 == n.strip.x0 && l.strip.x1 == r.strip.x0 && r.strip.x1 == n.strip.x1 &&
            l.strip.x0 < l.strip.x1 && r.strip.x0 < r.strip.x1)) {
        bad.push_back(at + "children do not partition the strip");
      }
      if (l.depth != n.depth + 1 || r.depth != n.depth + 1) bad.push_back(at + "child depth wrong");
    }
  }
  if (t.depth() > depth_bound(p_root)) bad.push_back("depth " + std::to_string(t.depth()) + " exceeds bound");
  if (t.leaves() > std::max<std::size_t>(1, 2 * p_root)) bad.push_back("too many leaves");
  return bad;
}

std::vector<std::vector<std::size_t>> dilworth_color(const std::vector<std::size_t>& perm) {
  const std::size_t t = perm.size();
  std::vector<bool> seen(t + 1, false);
  for (auto v : perm) {
    if (v < 1 || v > t || seen[v]) throw InvalidInput("dilworth_color: input is not a permutation of 1..t");
    seen[v] = true;
  }
  // Pile tops are kept in decreasing order of value (creation order).
  std::vector<std::size_t> tops;
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t pos = 0; pos < t; ++pos) {
    const std::size_t v = perm[pos];
    // first pile whose top is below v is the one with the largest such top
    auto it = std::lower_bound(tops.begin(), tops.end(), v, std::greater<>());
    if (it == tops.end()) {
      tops.push_back(v);
      classes.push_back({pos + 1});
    } else {
      *it = v;
      classes[static_cast<std::size_t>(it - tops.begin())].push_back(pos + 1);
    }
  }
  return classes;
}

std::vector<std::size_t> through_permutation(const CurveFamily& throughs) {
  const std::size_t t = throughs.size();
  std::vector<std::size_t> left(t), right(t);
  std::iota(left.begin(), left.end(), 0);
  std::iota(right.begin(), right.end(), 0);
  std::sort(left.begin(), left.end(), [&](auto a, auto b) { return throughs[a].front().y < throughs[b].front().y; });
  std::sort(right.begin(), right.end(), [&](auto a, auto b) { return throughs[a].back().y < throughs[b].back().y; });
  std::vector<std::size_t> rank(t);
  for (std::size_t r = 0; r < t; ++r) rank[right[r]] = r + 1;
  std::vector<std::size_t> perm;
  for (auto i : left) perm.push_back(rank[i]);
  return perm;
}

namespace {

// Validates the A/B preconditions; returns crossing indicators cross[a][b].
std::vector<std::vector<bool>> trace_incidence(const CurveFamily& a, const CurveFamily& b) {
  const Strip s = grounds_of(a);
  std::vector<MonotoneCurve> all = a.curves();
  for (const auto& c : b.curves()) {
    if (c.front().x < s.x0 || s.x1 < c.back().x) throw InvalidInput("curve '" + c.id() + "' leaves the strip");
    all.push_back(c);
  }
  const CurveFamily u(std::move(all));
  const auto cm = crossing_matrix(u);
  if (const auto chk = pseudosegment_check_from_crossings(u, cm); !chk.ok()) {
    throw InvalidInput("not pseudo-segments: '" + chk.violation->first + "' and '" + chk.violation->second + "'");
  }
  std::vector<std::vector<bool>> x(a.size(), std::vector<bool>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) x[i][j] = cm[i][a.size() + j] > 0;
  }
  return x;
}

}  // namespace

TraceBound trace_bound_check(const CurveFamily& a, const CurveFamily& b, std::size_t z) {
  if (z < 1 || z > b.size()) throw BadParams("trace bound: need 1 <= z <= |B|");
  if (a.empty()) throw BadParams("trace bound: A is empty");
  const auto x = trace_incidence(a, b);
  std::vector<BitRow> rows;
  for (const auto& r : x) {
    BitRow row(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) row.set(j, r[j]);
    rows.push_back(std::move(row));
  }
  TraceBound out;
  out.max_primal = primal_shatter(SetFamily(b.size(), std::move(rows)), z);
  out.bound = (z + 1) * (2 * z + 1);
  out.ok = out.max_primal <= out.bound;
  return out;
}

DualTraceBound dual_trace_bound_check(const CurveFamily& a, const CurveFamily& b, std::size_t z) {
  if (z < 1 || z > a.size()) throw BadParams("dual trace bound: need 1 <= z <= |A|");
  const auto x = trace_incidence(a, b);
  const Strip s = grounds_of(a);
  DualTraceBound out;
  out.ok = true;
  std::vector<std::size_t> idx(z);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::set<std::vector<bool>> patterns;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::vector<bool> pat;
      for (auto i : idx) pat.push_back(x[i][j]);
      patterns.insert(std::move(pat));
    }
    std::vector<MonotoneCurve> sub;
    for (auto i : idx) sub.push_back(a[i]);
    const std::size_t t = vertical_decomposition(CurveFamily(std::move(sub)), s.x0, s.x1).size();
    out.max_patterns = std::max(out.max_patterns, patterns.size());
    out.max_cells = std::max(out.max_cells, t);
    if (patterns.size() > t * (t + 1) / 2) out.ok = false;
    std::size_t i = z;
    while (i > 0 && idx[i - 1] == a.size() - z + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t k = i; k < z; ++k) idx[k] = idx[k - 1] + 1;
  }
  return out;
}

DoubleGroundedCensus enumerate_double_grounded(int m) {
  if (m < 0) throw BadParams("m must be nonnegative");
  if (m > 4) throw TooLarge("enumerate_double_grounded supports m <= 4, got " + std::to_string(m));
  const std::size_t w = static_cast<std::size_t>(m);
  auto pair_bit = [w](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return std::uint32_t{1} << (a * w + b);
  };
  std::set<std::uint32_t> graphs;
  std::uint64_t classes = 0;
  std::vector<std::size_t> order(w);
  std::iota(order.begin(), order.end(), 0);
  std::function<void(std::uint32_t)> dfs = [&](std::uint32_t swapped) {
    ++classes;
    graphs.insert(swapped);
    for (std::size_t p = 0; p + 1 < w; ++p) {
      const std::uint32_t bit = pair_bit(order[p], order[p + 1]);
      if (swapped & bit) continue;
      std::swap(order[p], order[p + 1]);
      dfs(swapped | bit);
      std::swap(order[p], order[p + 1]);
    }
  };
  do {
    dfs(0);
  } while (std::next_permutation(order.begin(), order.end()));
  return {graphs.size(), classes};
}

namespace {

bool satisfies_shatter_bound(const SetFamily& f, const Rat& c, long d) {
  for (std::size_t z = 1; z <= f.n(); ++z) {
    Rat cap = c;
    for (long e = 0; e < d; ++e) cap = cap * Rat(static_cast<long>(z));
    if (cap < Rat(static_cast<long>(primal_shatter(f, z)))) return false;
  }
  return true;
}

SetFamily family_of_codes(std::size_t n, const std::vector<std::size_t>& codes) {
  std::vector<BitRow> rows;
  for (auto code : codes) {
    BitRow r(n);
    for (std::size_t e = 0; e < n; ++e) r.set(e, (code >> e) & 1U);
    rows.push_back(std::move(r));
  }
  return SetFamily(n, std::move(rows));
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

HRelation verify_h_relation(int n, int m, const Rat& c, long d) {
  if (n < 1 || m < 1 || d < 0) throw BadParams("verify_h_relation needs n, m >= 1 and d >= 0");
  if (n > 3 || m > 4) throw TooLarge("verify_h_relation supports n <= 3, m <= 4");
  const std::size_t nn = static_cast<std::size_t>(n), mm = static_cast<std::size_t>(m);
  const std::size_t subsets = std::size_t{1} << nn;
  HRelation h;

  // multisets: non-decreasing code sequences of length m
  std::vector<std::size_t> seq(mm, 0);
  std::function<void(std::size_t, std::size_t)> multis = [&](std::size_t pos, std::size_t from) {
    if (pos == mm) {
      if (satisfies_shatter_bound(family_of_codes(nn, seq), c, d)) ++h.lhs;
      return;
    }
    for (std::size_t v = from; v < subsets; ++v) {
      seq[pos] = v;
      multis(pos + 1, v);
    }
  };
  multis(0, 0);

  // sets: strictly increasing code sequences of each length m' <= m
  for (std::size_t mp = 1; mp <= mm; ++mp) {
    std::uint64_t count = 0;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> sets = [&](std::size_t from) {
      if (cur.size() == mp) {
        if (satisfies_shatter_bound(family_of_codes(nn, cur), c, d)) ++count;
        return;
      }
      for (std::size_t v = from; v < subsets; ++v) {
        cur.push_back(v);
        sets(v + 1);
        cur.pop_back();
      }
    };
    sets(0);
    h.rhs += count * binom(mm - 1, mp - 1);
  }
  return h;
}

namespace {

std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "";
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

long json_long(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidInput(std::string("bound table: ") + what + " must be an integer");
  return j.get<long>();
}

}  // namespace

void bound_table(const nlohmann::json& experiment, std::ostream& out) {
  if (!experiment.is_object()) throw InvalidInput("bound table: experiment description must be a JSON object");
  for (const auto& [key, value] : experiment.items()) {
    if (key != "grid" && key != "staircase" && key != "double_grounded") {
      throw InvalidInput("bound table: unknown experiment '" + key + "'");
    }
    if (!value.is_array()) throw InvalidInput("bound table: '" + key + "' must be an array");
  }
  out << "family,n,k,log2_count,exponent_model,fitted_constant\n";
  auto pair_of = [](const nlohmann::json& p, const char* what) {
    if (!p.is_array() || p.size() != 2) throw InvalidInput(std::string("bound table: ") + what + " entries are [a,b] pairs");
    return std::pair{json_long(p[0], what), json_long(p[1], what)};
  };
  if (experiment.contains("grid")) {
    for (const auto& p : experiment["grid"]) {
      const auto [n, k] = pair_of(p, "grid");
      const auto g = build_grid(n, k);
      const auto c = grid_census(g, std::uint64_t{1} << 16);
      const double lg = c.count_log2();
      out << "grid," << n << ',' << k << ',' << fmt_double(lg) << ",k*n," << fmt_double(lg / double(k * n)) << '\n';
    }
  }
  if (experiment.contains("staircase")) {
    for (const auto& p : experiment["staircase"]) {
      const auto [k, h] = pair_of(p, "staircase");
      if (k < 1 || h < 1) throw BadParams("staircase needs k, h >= 1");
      const auto c = staircase_census(k, h, 0);
      const long n = 3 * k + h;
      const double lg = c.count_log2();
      const double model = double(n) * std::log2(double(n));
      out << "staircase," << n << ',' << k << ',' << fmt_double(lg) << ",n*log2(n)," << fmt_double(lg / model) << '\n';
    }
  }
  if (experiment.contains("double_grounded")) {
    for (const auto& p : experiment["double_grounded"]) {
      const long m = json_long(p, "double_grounded");
      const auto c = enumerate_double_grounded(static_cast<int>(m));
      const double lg = std::log2(double(c.graph_count));
      const double model = std::pow(double(m), 4.0 / 3.0) * std::pow(std::log2(double(m)), 2.0);
      out << "double_grounded," << m << ",," << fmt_double(lg) << ",n^(4/3)*log2(n)^2,"
          << (model > 0 ? fmt_double(lg / model) : "") << '\n';
    }
  }
}

}  // namespace pseudoseg
