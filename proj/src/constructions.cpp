#include "pseudoseg/constructions.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "pseudoseg/errors.hpp"

namespace pseudoseg {

std::size_t GridIncidence::total_incidences() const {
  std::size_t total = 0;
  for (const auto& inc : incidences) total += inc.size();
  return total;
}

long floor_cbrt(long v) {
  if (v < 0) throw BadParams("cube root of a negative number");
  long r = static_cast<long>(std::cbrt(static_cast<double>(v)));
  while (r > 0 && r * r * r > v) --r;
  while ((r + 1) * (r + 1) * (r + 1) <= v) ++r;
  return r;
}

GridIncidence build_grid(long n, long k) {
  if (n < 8) throw BadParams("grid needs n >= 8 (got " + std::to_string(n) + ")");
  if (n > (1L << 30)) throw BadParams("grid budget n too large");
  const long side = floor_cbrt(n);  // floor(n^(1/3))
  if (k < 1 || k > side) {
    throw BadParams("grid needs 1 <= k <= n^(1/3) (k=" + std::to_string(k) + ", n=" +
                    std::to_string(n) + ")");
  }
  const long height = floor_cbrt(n * n);   // floor(n^(2/3))
  const long intercepts = (height + 1) / 2;

  GridIncidence g;
  g.n = n;
  g.k = k;
  for (long a = 0; a < side; ++a) {
    for (long b = 0; b < height; ++b) g.points.push_back({a, b});
  }
  for (long s = 1; s <= k - 1; ++s) {
    for (long t = 0; t < intercepts; ++t) {
      g.lines.push_back({s, t});
      std::vector<std::size_t> inc;
      for (long a = 0; a < side; ++a) {
        const long y = s * a + t;
        if (y < height) inc.push_back(static_cast<std::size_t>(a * height + y));
      }
      g.incidences.push_back(std::move(inc));
    }
  }

  if (static_cast<long>(g.points.size()) > n ||
      static_cast<long>(g.lines.size()) > (k - 1) * intercepts) {
    throw std::logic_error("grid size invariant violated");
  }
  for (const auto& inc : g.incidences) {
    if (4 * static_cast<long>(inc.size()) < side) {
      throw std::logic_error("grid line with fewer than n^(1/3)/4 incidences");
    }
  }
  return g;
}

DetourChoice uniform_choice(const GridIncidence& g, Detour d) {
  DetourChoice c;
  for (const auto& inc : g.incidences) c.per_line.emplace_back(inc.size(), d);
  return c;
}

DetourChoice choice_from_bits(const GridIncidence& g, std::uint64_t bits) {
  DetourChoice c;
  std::size_t t = 0;
  for (const auto& inc : g.incidences) {
    std::vector<Detour> row;
    for (std::size_t q = 0; q < inc.size(); ++q, ++t) {
      const bool cross = t < 64 && ((bits >> t) & 1U);
      row.push_back(cross ? Detour::Cross : Detour::Avoid);
    }
    c.per_line.push_back(std::move(row));
  }
  return c;
}

DetourChoice random_choice(const GridIncidence& g, std::mt19937_64& rng) {
  DetourChoice c;
  for (const auto& inc : g.incidences) {
    std::vector<Detour> row;
    for (std::size_t q = 0; q < inc.size(); ++q) row.push_back((rng() & 1U) ? Detour::Cross : Detour::Avoid);
    c.per_line.push_back(std::move(row));
  }
  return c;
}

std::string point_label(const GridPoint& p) {
  return "p" + std::to_string(p.a) + "_" + std::to_string(p.b);
}

std::string line_label(const GridLine& l) {
  return "l" + std::to_string(l.slope) + "_" + std::to_string(l.intercept);
}

namespace {

void check_choice(const GridIncidence& g, const DetourChoice& c) {
  if (c.per_line.size() != g.incidences.size()) {
    throw ChoiceMismatch("choice covers " + std::to_string(c.per_line.size()) + " lines, grid has " +
                         std::to_string(g.incidences.size()));
  }
  for (std::size_t l = 0; l < g.incidences.size(); ++l) {
    if (c.per_line[l].size() != g.incidences[l].size()) {
      throw ChoiceMismatch("choice for line " + line_label(g.lines[l]) + " has " +
                           std::to_string(c.per_line[l].size()) + " entries, line has " +
                           std::to_string(g.incidences[l].size()) + " incidences");
    }
  }
}

std::vector<std::string> grid_labels(const GridIncidence& g) {
  std::vector<std::string> labels;
  labels.reserve(g.points.size() + g.lines.size());
  for (const auto& p : g.points) labels.push_back(point_label(p));
  for (const auto& l : g.lines) labels.push_back(line_label(l));
  return labels;
}

}  // namespace

LabelledGraph combinatorial_graph(const GridIncidence& g, const DetourChoice& c) {
  check_choice(g, c);
  LabelledGraph graph(grid_labels(g));
  const std::size_t base = g.points.size();
  for (std::size_t l1 = 0; l1 < g.lines.size(); ++l1) {
    for (std::size_t l2 = l1 + 1; l2 < g.lines.size(); ++l2) {
      if (g.lines[l1].slope != g.lines[l2].slope) graph.add_edge(base + l1, base + l2);
    }
    for (std::size_t q = 0; q < g.incidences[l1].size(); ++q) {
      if (c.per_line[l1][q] == Detour::Cross) graph.add_edge(g.incidences[l1][q], base + l1);
    }
  }
  return graph;
}

Rat default_grid_scale(const GridIncidence& g) { return Rat(1, 2 * g.k); }

CurveFamily realize_geometric(const GridIncidence& g, const DetourChoice& c, const Rat& scale) {
  check_choice(g, c);
  if (scale.sign() <= 0 || Rat(1, 2 * g.k) < scale) {
    throw BadParams("grid scale must satisfy 0 < scale <= 1/(2k), got " + scale.str());
  }
  long side = 0;
  long intercepts = 0;
  for (const auto& p : g.points) side = std::max(side, p.a + 1);
  for (const auto& l : g.lines) intercepts = std::max(intercepts, l.intercept + 1);
  const Rat x_lo(-intercepts - 1);
  const Rat x_hi(side + intercepts + 1);

  std::vector<MonotoneCurve> curves;
  curves.reserve(g.points.size() + g.lines.size());
  for (const auto& p : g.points) {
    curves.emplace_back(point_label(p),
                        std::vector<Point>{{Rat(p.a), Rat(p.b)}, {Rat(p.a) + scale, Rat(p.b)}});
  }

  mpz_class pow2 = 1;
  for (std::size_t rank = 0; rank < g.lines.size(); ++rank, pow2 *= 2) {
    const GridLine& line = g.lines[rank];
    const Rat slope(line.slope);
    const Rat intercept(line.intercept);
    // Windows shrink with rank, so at a shared point every later line's
    // detour sits inside the flat part of every earlier line's detour.
    const Rat half_width = scale / (Rat(4 * line.slope) * Rat(mpq_class(pow2)));
    const Rat rise = Rat(g.k) * half_width;
    const Rat half = half_width / Rat(2);

    std::vector<Point> pts;
    pts.push_back({x_lo, slope * x_lo + intercept});
    for (std::size_t q = 0; q < g.incidences[rank].size(); ++q) {
      const GridPoint& p = g.points[g.incidences[rank][q]];
      const Rat a(p.a);
      const Rat b(p.b);
      const Rat level = c.per_line[rank][q] == Detour::Avoid ? b + rise : b - rise;
      pts.push_back({a - half_width, b - slope * half_width});
      pts.push_back({a - half, level});
      pts.push_back({a + half, level});
      pts.push_back({a + half_width, b + slope * half_width});
    }
    pts.push_back({x_hi, slope * x_hi + intercept});
    curves.emplace_back(line_label(line), std::move(pts));
  }

  CurveFamily family(std::move(curves));
  std::vector<std::vector<std::size_t>> counts;
  try {
    counts = crossing_matrix(family);
  } catch (const DegenerateError& e) {
    throw RealizationFailure(std::string("realization is not generic: ") + e.what());
  }
  if (auto check = pseudosegment_check_from_crossings(family, counts); !check.ok()) {
    throw RealizationFailure("realization curves '" + check.violation->first + "' and '" +
                             check.violation->second + "' cross more than once");
  }
  if (!(graph_from_crossings(family, counts) == combinatorial_graph(g, c))) {
    throw RealizationFailure("realized intersection graph differs from the combinatorial graph");
  }
  return family;
}

GridCensus grid_census(const GridIncidence& g, std::uint64_t limit, bool geometric) {
  GridCensus out;
  out.n = g.n;
  out.k = g.k;
  out.incidences = g.total_incidences();
  if (out.incidences < 64) out.count = std::uint64_t{1} << out.incidences;
  if (!out.count || *out.count > limit) return out;

  const Rat scale = default_grid_scale(g);
  std::unordered_set<BitRow, BitRowHash> seen;
  seen.reserve(static_cast<std::size_t>(*out.count));
  bool ok = true;
  for (std::uint64_t bits = 0; bits < *out.count; ++bits) {
    const DetourChoice c = choice_from_bits(g, bits);
    const LabelledGraph graph = combinatorial_graph(g, c);
    const std::size_t omega = clique_number(graph);
    out.max_clique = std::max(out.max_clique, omega);
    if (omega > static_cast<std::size_t>(g.k)) ok = false;
    seen.insert(graph.canonical_encoding());
    if (geometric) {
      try {
        realize_geometric(g, c, scale);
      } catch (const Error&) {
        ok = false;
      }
    }
  }
  out.geometric_checked = geometric;
  out.distinct_graphs = seen.size();
  out.verified = ok && out.distinct_graphs == *out.count;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_staircase(const StaircaseParams& p) {
  if (p.k < 1) throw BadParams("staircase needs k >= 1");
  for (std::size_t t = 0; t < p.choices.size(); ++t) {
    const auto& ch = p.choices[t];
    if (ch.i < 1 || ch.i > p.k || ch.j < 1 || ch.j > p.k || ch.l < 1 || ch.l > p.k) {
      throw BadParams("staircase choice " + std::to_string(t + 1) + " outside [1.." +
                      std::to_string(p.k) + "]^3");
    }
  }
}

}  // namespace

CurveFamily staircase_build(const StaircaseParams& p) {
  check_staircase(p);
  const long k = p.k;
  const long h = static_cast<long>(p.h());
  const Rat gap(1, k + 1);
  const Rat tilt(1, 4 * (k + 1) * (k + 1));          // left/right groups
  const Rat middle_tilt(1, 8 * (k + 1) * (k + 1));   // middle group
  const Rat middle_gap(1, 4 * (k + 1));

  std::vector<MonotoneCurve> curves;
  auto vertical = [&](const std::string& id, const Rat& x, const Rat& dx, const Rat& top) {
    curves.emplace_back(id, std::vector<Point>{{x, Rat(-1)}, {x + dx, top}});
  };
  for (long u = 1; u <= k; ++u) vertical("L" + std::to_string(u), Rat(-1) + Rat(u) * gap, tilt, Rat(1));
  // Middle group: tops rise with u, so a horizontal just below top_{k-l+1}
  // meets exactly the last l of them.
  for (long u = 1; u <= k; ++u) {
    vertical("M" + std::to_string(u), Rat(u) * middle_gap, middle_tilt, Rat(u) * middle_gap);
  }
  for (long u = 1; u <= k; ++u) vertical("R" + std::to_string(u), Rat(1) + Rat(u) * gap, tilt, Rat(1));

  const Rat half_gap = gap / Rat(2);
  for (long t = 0; t < h; ++t) {
    const auto& ch = p.choices[static_cast<std::size_t>(t)];
    const Rat left = Rat(-1) + Rat(k - ch.i) * gap + half_gap;
    const Rat right = Rat(1) + Rat(ch.j) * gap + half_gap;
    const Rat y = Rat(k - ch.l) * middle_gap + Rat(t + 1, 1) * middle_gap / Rat(h + 1);
    curves.emplace_back("H" + std::to_string(t + 1), std::vector<Point>{{left, y}, {right, y}});
  }
  return CurveFamily(std::move(curves));
}

StaircaseParams staircase_params_from_index(long k, long h, std::uint64_t code) {
  StaircaseParams p;
  p.k = k;
  const auto base = static_cast<std::uint64_t>(k);
  for (long t = 0; t < h; ++t) {
    StaircaseChoice ch{};
    ch.i = static_cast<long>(code % base) + 1;
    code /= base;
    ch.j = static_cast<long>(code % base) + 1;
    code /= base;
    ch.l = static_cast<long>(code % base) + 1;
    code /= base;
    p.choices.push_back(ch);
  }
  return p;
}

double StaircaseCensus::count_log2() const {
  return 3.0 * static_cast<double>(h) * std::log2(static_cast<double>(k));
}

namespace {

// Verifies that the horizontal's neighbourhood is exactly the chosen
// suffix/prefix/suffix of the three vertical groups.
bool neighbourhoods_match(const LabelledGraph& g, const StaircaseParams& p) {
  const auto k = static_cast<std::size_t>(p.k);
  for (std::size_t t = 0; t < p.h(); ++t) {
    const std::size_t v = 3 * k + t;
    const auto& ch = p.choices[t];
    for (std::size_t u = 0; u < k; ++u) {
      const bool left = u >= k - static_cast<std::size_t>(ch.i);
      const bool middle = u >= k - static_cast<std::size_t>(ch.l);
      const bool right = u < static_cast<std::size_t>(ch.j);
      if (g.adjacent(v, u) != left || g.adjacent(v, k + u) != middle ||
          g.adjacent(v, 2 * k + u) != right) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

StaircaseCensus staircase_census(long k, long h, std::uint64_t limit) {
  if (k < 1 || h < 0) throw BadParams("staircase census needs k >= 1, h >= 0");
  StaircaseCensus out;
  out.k = k;
  out.h = h;
  std::uint64_t count = 1;
  const auto per = static_cast<std::uint64_t>(k * k * k);
  bool fits = true;
  for (long t = 0; t < h && fits; ++t) {
    if (count > UINT64_MAX / per) {
      fits = false;
    } else {
      count *= per;
    }
  }
  if (!fits) return out;
  out.count = count;
  if (count > limit) return out;

  std::unordered_set<BitRow, BitRowHash> seen;
  bool ok = true;
  const auto vertical_count = static_cast<std::size_t>(3 * k);
  for (std::uint64_t code = 0; code < count; ++code) {
    const StaircaseParams p = staircase_params_from_index(k, h, code);
    const CurveFamily f = staircase_build(p);
    const auto counts = crossing_matrix(f);
    if (!pseudosegment_check_from_crossings(f, counts).ok()) ok = false;
    const LabelledGraph g = graph_from_crossings(f, counts);
    for (const auto& [a, b] : g.edges()) {
      if ((a < vertical_count) == (b < vertical_count)) ok = false;
    }
    if (!neighbourhoods_match(g, p)) ok = false;
    seen.insert(g.canonical_encoding());
  }
  out.distinct_graphs = seen.size();
  out.verified = ok && out.distinct_graphs == count;
  return out;
}

}  // namespace pseudoseg
