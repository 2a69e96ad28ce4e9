#include "pseudoseg/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "pseudoseg/errors.hpp"

namespace pseudoseg {

namespace {

std::string pair_key(const std::string& a, const std::string& b) {
  return a < b ? a + '\x1f' + b : b + '\x1f' + a;
}

}  // namespace

WiringDiagram::WiringDiagram(std::vector<std::string> wires, std::vector<Swap> swaps)
    : wires_(std::move(wires)), swaps_(std::move(swaps)) {
  if (std::set<std::string>(wires_.begin(), wires_.end()).size() != wires_.size()) {
    throw InvalidInput("wiring diagram: duplicate wire label");
  }
  auto order = wires_;
  std::set<std::string> seen;
  for (std::size_t s = 0; s < swaps_.size(); ++s) {
    auto& sw = swaps_[s];
    if (sw.pos < 1 || sw.pos >= order.size()) {
      throw InvalidInput("wiring diagram: swap " + std::to_string(s + 1) + " at invalid position " + std::to_string(sw.pos));
    }
    const auto& lo = order[sw.pos - 1];
    const auto& hi = order[sw.pos];
    if (sw.lower == hi && sw.upper == lo) std::swap(sw.lower, sw.upper);
    if (sw.lower != lo || sw.upper != hi) {
      throw InvalidInput("wiring diagram: swap " + std::to_string(s + 1) + " names " + sw.lower + "," + sw.upper +
                         " but positions hold " + lo + "," + hi);
    }
    if (!seen.insert(pair_key(lo, hi)).second) {
      throw InvalidInput("wiring diagram: pair " + lo + "," + hi + " swaps twice");
    }
    std::swap(order[sw.pos - 1], order[sw.pos]);
  }
}

std::vector<std::string> WiringDiagram::final_order() const {
  auto order = wires_;
  for (const auto& sw : swaps_) std::swap(order[sw.pos - 1], order[sw.pos]);
  return order;
}

WiringDiagram diagram_from_positions(std::vector<std::string> wires, const std::vector<std::size_t>& positions) {
  auto order = wires;
  std::vector<Swap> swaps;
  for (auto p : positions) {
    if (p < 1 || p >= order.size()) throw InvalidInput("swap position " + std::to_string(p) + " out of range");
    swaps.push_back({p, order[p - 1], order[p]});
    std::swap(order[p - 1], order[p]);
  }
  return WiringDiagram(std::move(wires), std::move(swaps));
}

std::vector<CrossingEvent> sorted_crossings(const CurveFamily& f) {
  std::vector<CrossingEvent> ev;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      auto pts = crossing_points(f[i], f[j]);
      if (pts.size() > 1) {
        throw InvalidInput("not a pseudo-segment family: '" + f[i].id() + "' and '" + f[j].id() + "' cross " +
                           std::to_string(pts.size()) + " times");
      }
      if (!pts.empty()) ev.push_back({pts[0], i, j});
    }
  }
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.at.x < b.at.x; });
  for (std::size_t e = 1; e < ev.size(); ++e) {
    if (ev[e].at.x == ev[e - 1].at.x) {
      throw SharedCrossingX("crossings of " + f[ev[e - 1].i].id() + "/" + f[ev[e - 1].j].id() + " and " +
                            f[ev[e].i].id() + "/" + f[ev[e].j].id() + " share x = " + ev[e].at.x.str());
    }
  }
  return ev;
}

namespace {

// Wire indices bottom to top at the left ground.
std::vector<std::size_t> left_order(const CurveFamily& f) {
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return f[a].front().y < f[b].front().y; });
  return order;
}

// Applies a crossing event to the current order; returns the 1-based position.
std::size_t apply_crossing(const CurveFamily& f, const CrossingEvent& e, std::vector<std::size_t>& order,
                           std::vector<std::size_t>& pos_of) {
  const std::size_t pi = pos_of[e.i], pj = pos_of[e.j];
  const std::size_t lo = std::min(pi, pj);
  if (std::max(pi, pj) != lo + 1) {
    throw std::logic_error("sweep: crossing of non-adjacent curves " + f[e.i].id() + ", " + f[e.j].id());
  }
  std::swap(order[lo], order[lo + 1]);
  pos_of[order[lo]] = lo;
  pos_of[order[lo + 1]] = lo + 1;
  return lo + 1;
}

}  // namespace

WiringDiagram sweep(const CurveFamily& f) {
  grounds_of(f);
  const auto events = sorted_crossings(f);
  auto order = left_order(f);
  std::vector<std::size_t> pos_of(f.size());
  for (std::size_t p = 0; p < order.size(); ++p) pos_of[order[p]] = p;
  std::vector<std::string> wires;
  for (auto i : order) wires.push_back(f[i].id());
  std::vector<Swap> swaps;
  for (const auto& e : events) {
    const std::size_t lo = std::min(pos_of[e.i], pos_of[e.j]);
    Swap s{lo + 1, f[order[lo]].id(), f[order[lo + 1]].id()};
    apply_crossing(f, e, order, pos_of);
    swaps.push_back(std::move(s));
  }
  return WiringDiagram(std::move(wires), std::move(swaps));
}

std::string x_iso_canonical(const WiringDiagram& w) {
  std::map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < w.m(); ++i) rank[w.wires()[i]] = i + 1;
  std::string s = "m:" + std::to_string(w.m()) + ";";
  for (std::size_t k = 0; k < w.swaps().size(); ++k) {
    std::size_t a = rank[w.swaps()[k].lower], b = rank[w.swaps()[k].upper];
    if (a > b) std::swap(a, b);
    if (k > 0) s += ',';
    s += std::to_string(a) + "-" + std::to_string(b);
  }
  return s;
}

namespace {

std::uint64_t count_full(std::vector<int>& perm, std::size_t remaining) {
  if (remaining == 0) return 1;
  std::uint64_t total = 0;
  for (std::size_t p = 0; p + 1 < perm.size(); ++p) {
    if (perm[p] < perm[p + 1]) {
      std::swap(perm[p], perm[p + 1]);
      total += count_full(perm, remaining - 1);
      std::swap(perm[p], perm[p + 1]);
    }
  }
  return total;
}

}  // namespace

std::uint64_t enumerate_full_allowable(int m) {
  if (m < 0) throw BadParams("m must be nonnegative");
  if (m > 5) throw TooLarge("enumerate_full_allowable supports m <= 5, got " + std::to_string(m));
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  return count_full(perm, static_cast<std::size_t>(m * (m - 1) / 2));
}

std::vector<Face> faces(const WiringDiagram& w) {
  const std::size_t m = w.m();
  std::vector<Face> out;
  std::vector<std::size_t> open(m + 1);
  auto order = w.wires();
  auto touch = [&](std::size_t face, const std::string& wire) {
    auto& ws = out[face].wires;
    if (std::find(ws.begin(), ws.end(), wire) == ws.end()) ws.push_back(wire);
    ++out[face].sides;
  };
  auto open_face = [&](std::size_t g) {
    open[g] = out.size();
    out.push_back({g, 0, {}});
    if (g >= 1) touch(open[g], order[g - 1]);
    if (g + 1 <= m) touch(open[g], order[g]);
  };
  for (std::size_t g = 0; g <= m; ++g) open_face(g);
  for (const auto& sw : w.swaps()) {
    const std::size_t p = sw.pos;
    std::swap(order[p - 1], order[p]);
    touch(open[p - 1], order[p - 1]);  // new upper edge of the face below
    touch(open[p + 1], order[p]);      // new lower edge of the face above
    open_face(p);
  }
  for (auto& f : out) std::sort(f.wires.begin(), f.wires.end());
  return out;
}

std::size_t zone_complexity(const WiringDiagram& w, const std::string& wire) {
  if (std::find(w.wires().begin(), w.wires().end(), wire) == w.wires().end()) {
    throw UnknownWire("unknown wire '" + wire + "'");
  }
  std::size_t total = 0;
  for (const auto& f : faces(w)) {
    if (std::binary_search(f.wires.begin(), f.wires.end(), wire)) total += f.sides;
  }
  return total;
}

WiringDiagram random_wiring_diagram(std::size_t m, std::mt19937_64& rng, std::optional<std::size_t> swaps) {
  const std::size_t pairs = m * (m - (m > 0 ? 1 : 0)) / 2;
  std::size_t target = swaps ? std::min(*swaps, pairs) : std::uniform_int_distribution<std::size_t>(0, pairs)(rng);
  std::vector<std::string> wires;
  for (std::size_t i = 1; i <= m; ++i) wires.push_back(std::to_string(i));
  std::vector<std::size_t> rank(m);
  std::iota(rank.begin(), rank.end(), 0);  // rank[p] = initial rank of the wire at position p
  std::vector<std::size_t> positions, legal;
  for (std::size_t s = 0; s < target; ++s) {
    legal.clear();
    for (std::size_t p = 0; p + 1 < m; ++p) {
      if (rank[p] < rank[p + 1]) legal.push_back(p);
    }
    if (legal.empty()) break;
    const std::size_t p = legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)];
    std::swap(rank[p], rank[p + 1]);
    positions.push_back(p + 1);
  }
  return diagram_from_positions(std::move(wires), positions);
}

WiringDiagram read_wiring_text(std::istream& in) {
  long m = 0;
  if (!(in >> m) || m < 0) throw InvalidInput("wiring diagram: expected wire count on the first line");
  std::vector<std::string> wires;
  for (long i = 1; i <= m; ++i) wires.push_back(std::to_string(i));
  std::vector<Swap> swaps;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    long p = 0;
    std::string a, b, extra;
    if (!(ls >> p)) continue;  // blank line
    if (!(ls >> a >> b) || (ls >> extra) || p < 1) throw InvalidInput("wiring diagram: malformed swap line '" + line + "'");
    swaps.push_back({static_cast<std::size_t>(p), a, b});
  }
  return WiringDiagram(std::move(wires), std::move(swaps));
}

void write_wiring_text(std::ostream& out, const WiringDiagram& w) {
  std::map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < w.m(); ++i) rank[w.wires()[i]] = i + 1;
  out << w.m() << '\n';
  for (const auto& s : w.swaps()) out << s.pos << ' ' << rank[s.lower] << ' ' << rank[s.upper] << '\n';
}

// ---------------------------------------------------------------------------

std::size_t VerticalDecomposition::max_crossings() const {
  std::size_t best = 0;
  for (const auto& c : cells) best = std::max(best, c.crossings.size());
  return best;
}

namespace {

// Slope of the segment of c whose open x-range contains x.
Rat slope_at(const MonotoneCurve& c, const Rat& x) {
  const auto& v = c.vertices();
  auto it = std::upper_bound(v.begin(), v.end(), x, [](const Rat& xv, const Point& p) { return xv < p.x; });
  if (it == v.begin() || it == v.end()) throw std::logic_error("slope_at outside curve");
  const Point& b = *it;
  const Point& a = *(it - 1);
  return (b.y - a.y) / (b.x - a.x);
}

struct WallEvent {
  Rat x;
  std::size_t gap;                   // crossing at positions gap, gap+1 (1-based gap)
  std::vector<std::size_t> born;     // new cells at gaps gap-1, gap, gap+1
};

// Cells met by the open curve `probe`, given the decomposed curves (indices
// into `f`), their wall events and the initial cells per gap.
std::vector<std::size_t> cells_met(const CurveFamily& f, const MonotoneCurve& probe,
                                   const std::vector<WallEvent>& walls, const std::vector<std::size_t>& first_cells) {
  // gap changes along the probe: +1 when a curve passes from above to below
  std::vector<std::pair<Rat, int>> hits;
  for (std::size_t c = 0; c < f.size(); ++c) {
    for (const auto& pt : crossing_points(probe, f[c])) {
      hits.emplace_back(pt.x, slope_at(f[c], pt.x) < slope_at(probe, pt.x) ? +1 : -1);
    }
  }
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  const Rat& xs = probe.front().x;
  const Rat& xe = probe.back().x;
  std::size_t gap = 0;
  for (std::size_t c = 0; c < f.size(); ++c) {
    if (f[c].y_at(xs) < probe.front().y) ++gap;
  }
  std::vector<std::size_t> cur = first_cells;
  std::size_t w = 0;
  while (w < walls.size() && !(xs < walls[w].x)) {
    for (std::size_t k = 0; k < 3; ++k) cur[walls[w].gap - 1 + k] = walls[w].born[k];
    ++w;
  }
  std::size_t h = 0;
  std::vector<std::size_t> met{cur[gap]};
  while (true) {
    const Rat* next = nullptr;
    if (w < walls.size()) next = &walls[w].x;
    if (h < hits.size() && (!next || hits[h].first < *next)) next = &hits[h].first;
    if (!next || !(*next < xe)) break;
    const Rat x = *next;
    while (w < walls.size() && walls[w].x == x) {
      for (std::size_t k = 0; k < 3; ++k) cur[walls[w].gap - 1 + k] = walls[w].born[k];
      ++w;
    }
    while (h < hits.size() && hits[h].first == x) {
      gap = static_cast<std::size_t>(static_cast<long>(gap) + hits[h].second);
      ++h;
    }
    met.push_back(cur[gap]);
  }
  std::sort(met.begin(), met.end());
  met.erase(std::unique(met.begin(), met.end()), met.end());
  return met;
}

}  // namespace

VerticalDecomposition vertical_decomposition(const CurveFamily& f, const Rat& x0, const Rat& x1,
                                             const CurveFamily* probes) {
  if (!(x0 < x1) || !is_double_grounded(f, x0, x1)) {
    throw NotDoubleGrounded("vertical decomposition: family is not double-grounded on [" + x0.str() + "," + x1.str() + "]");
  }
  const std::size_t m = f.size();
  const auto events = sorted_crossings(f);
  VerticalDecomposition d;
  d.strip = Strip{x0, x1};
  auto order = left_order(f);
  std::vector<std::size_t> pos_of(m);
  for (std::size_t p = 0; p < m; ++p) pos_of[order[p]] = p;

  std::vector<std::size_t> open(m + 1);
  auto open_cell = [&](std::size_t g, const Rat& x, WallOrigin o) {
    open[g] = d.cells.size();
    Cell c{g, {}, {}, Wall{x, o}, Wall{x, o}, {}};
    if (g >= 1) c.bottom = f[order[g - 1]].id();
    if (g + 1 <= m) c.top = f[order[g]].id();
    d.cells.push_back(std::move(c));
  };
  for (std::size_t g = 0; g <= m; ++g) open_cell(g, x0, WallOrigin::Ground);
  const std::vector<std::size_t> first_cells = open;

  std::vector<WallEvent> walls;
  for (const auto& e : events) {
    const std::size_t p = std::min(pos_of[e.i], pos_of[e.j]) + 1;
    std::vector<std::size_t> old;
    for (std::size_t g = p - 1; g <= p + 1; ++g) {
      d.cells[open[g]].right = Wall{e.at.x, WallOrigin::Crossing};
      old.push_back(open[g]);
    }
    apply_crossing(f, e, order, pos_of);
    WallEvent we{e.at.x, p, {}};
    for (std::size_t g = p - 1; g <= p + 1; ++g) {
      open_cell(g, e.at.x, WallOrigin::Crossing);
      we.born.push_back(open[g]);
    }
    d.adjacency.emplace_back(old[0], we.born[0]);
    d.adjacency.emplace_back(old[2], we.born[2]);
    walls.push_back(std::move(we));
  }
  for (std::size_t g = 0; g <= m; ++g) d.cells[open[g]].right = Wall{x1, WallOrigin::Ground};

  if (probes) {
    for (const auto& probe : probes->curves()) {
      if (f.find(probe.id())) continue;
      if (probe.front().x < x0 || x1 < probe.back().x) {
        throw InvalidInput("probe curve '" + probe.id() + "' leaves the strip");
      }
      for (auto c : cells_met(f, probe, walls, first_cells)) d.cells[c].crossings.push_back(probe.id());
    }
  }
  return d;
}

std::size_t cutting_sample_size(std::size_t m, const Rat& r) {
  const double s = std::ceil(6.0 * r.to_double() * std::log(static_cast<double>(m)));
  return std::min(m, static_cast<std::size_t>(std::max(0.0, s)));
}

CuttingResult weak_cutting(const CurveFamily& f, const Rat& r, std::uint64_t seed) {
  const std::size_t m = f.size();
  if (m < 2) throw BadParams("weak cutting needs at least 2 curves");
  if (r < Rat(1) || Rat(static_cast<long>(m)) < r) throw BadParams("weak cutting needs 1 <= r <= m");
  const Strip strip = grounds_of(f);
  if (!is_pseudosegment_family(f).ok()) throw InvalidInput("weak cutting needs a pseudo-segment family");
  const std::size_t s = cutting_sample_size(m, r);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(m);
  constexpr std::size_t kRetryLimit = 100;
  for (std::size_t attempt = 1; attempt <= kRetryLimit; ++attempt) {
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t k = 0; k < s; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, m - 1);
      std::swap(idx[k], idx[pick(rng)]);
    }
    std::vector<std::size_t> chosen(idx.begin(), idx.begin() + static_cast<long>(s));
    std::sort(chosen.begin(), chosen.end());
    std::vector<MonotoneCurve> curves;
    for (auto i : chosen) curves.push_back(f[i]);
    CurveFamily sample(std::move(curves), strip);
    auto d = vertical_decomposition(sample, strip.x0, strip.x1, &f);
    const std::size_t worst = d.max_crossings();
    if (Rat(static_cast<long>(worst)) * r <= Rat(static_cast<long>(m))) {
      CuttingResult res{sample.labels(), std::move(d), r, attempt, worst};
      return res;
    }
  }
  throw RetryLimit("weak cutting: no acceptable sample after " + std::to_string(kRetryLimit) + " attempts");
}

}  // namespace pseudoseg
