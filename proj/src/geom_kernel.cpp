#include "pseudoseg/geom_kernel.hpp"

#include <algorithm>
#include <unordered_set>

#include "pseudoseg/errors.hpp"

namespace pseudoseg {

MonotoneCurve::MonotoneCurve(std::string id, std::vector<Point> vertices)
    : id_(std::move(id)), vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) {
    throw InvalidInput("curve '" + id_ + "' needs at least 2 vertices");
  }
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (!(vertices_[i - 1].x < vertices_[i].x)) {
      throw InvalidInput("curve '" + id_ + "' is not x-monotone at vertex " + std::to_string(i));
    }
  }
}

Rat MonotoneCurve::y_at(const Rat& x) const {
  if (x < front().x || back().x < x) {
    throw InvalidInput("abscissa " + x.str() + " outside curve '" + id_ + "'");
  }
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), x,
                             [](const Point& p, const Rat& v) { return p.x < v; });
  if (it->x == x) return it->y;
  const Point& b = *it;
  const Point& a = *(it - 1);
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

CurveFamily::CurveFamily(std::vector<MonotoneCurve> curves, std::optional<Strip> strip)
    : strip_(std::move(strip)) {
  if (strip_ && !(strip_->x0 < strip_->x1)) throw InvalidInput("strip needs x0 < x1");
  curves_.reserve(curves.size());
  for (auto& c : curves) add(std::move(c));
}

std::optional<std::size_t> CurveFamily::find(const std::string& id) const {
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    if (curves_[i].id() == id) return i;
  }
  return std::nullopt;
}

std::vector<std::string> CurveFamily::labels() const {
  std::vector<std::string> out;
  out.reserve(curves_.size());
  for (const auto& c : curves_) out.push_back(c.id());
  return out;
}

void CurveFamily::add(MonotoneCurve c) {
  if (find(c.id())) throw InvalidInput("duplicate curve label '" + c.id() + "'");
  if (strip_) {
    for (const auto& p : c.vertices()) {
      if (p.x < strip_->x0 || strip_->x1 < p.x) {
        throw InvalidInput("curve '" + c.id() + "' leaves the strip");
      }
    }
  }
  curves_.push_back(std::move(c));
}

int orientation(const Point& a, const Point& b, const Point& c) {
  const mpq_class lhs = (b.x.raw() - a.x.raw()) * (c.y.raw() - a.y.raw());
  const mpq_class rhs = (b.y.raw() - a.y.raw()) * (c.x.raw() - a.x.raw());
  return cmp(lhs, rhs);
}

namespace {

bool within(const Rat& v, const Rat& lo, const Rat& hi) { return !(v < lo) && !(hi < v); }

Point intersection_point(const Point& a, const Point& b, const Point& c, const Point& d) {
  const mpq_class rx = b.x.raw() - a.x.raw();
  const mpq_class ry = b.y.raw() - a.y.raw();
  const mpq_class sx = d.x.raw() - c.x.raw();
  const mpq_class sy = d.y.raw() - c.y.raw();
  const mpq_class denom = rx * sy - ry * sx;
  const mpq_class t = ((c.x.raw() - a.x.raw()) * sy - (c.y.raw() - a.y.raw()) * sx) / denom;
  return Point{Rat(mpq_class(a.x.raw() + t * rx)), Rat(mpq_class(a.y.raw() + t * ry))};
}

// Index of the first segment of `v` whose right end is at or beyond x.
std::size_t first_segment_reaching(const std::vector<Point>& v, const Rat& x) {
  auto it = std::lower_bound(v.begin() + 1, v.end(), x,
                             [](const Point& p, const Rat& val) { return p.x < val; });
  return static_cast<std::size_t>(it - v.begin()) - 1;
}

template <class OnCross>
void scan_pair(const MonotoneCurve& c1, const MonotoneCurve& c2, OnCross&& on_cross) {
  const auto& v1 = c1.vertices();
  const auto& v2 = c2.vertices();
  if (v1.back().x < v2.front().x || v2.back().x < v1.front().x) return;
  std::size_t i = first_segment_reaching(v1, v2.front().x);
  std::size_t j = first_segment_reaching(v2, v1.front().x);
  while (i + 1 < v1.size() && j + 1 < v2.size()) {
    const Point& a = v1[i];
    const Point& b = v1[i + 1];
    const Point& c = v2[j];
    const Point& d = v2[j + 1];
    if (!(b.x < c.x) && !(d.x < a.x)) {
      const auto [lo1, hi1] = std::minmax(a.y, b.y);
      const auto [lo2, hi2] = std::minmax(c.y, d.y);
      if (!(hi1 < lo2) && !(hi2 < lo1)) {
        const int o1 = orientation(a, b, c);
        const int o2 = orientation(a, b, d);
        const int o3 = orientation(c, d, a);
        const int o4 = orientation(c, d, b);
        if ((o1 == 0 && within(c.x, a.x, b.x)) || (o2 == 0 && within(d.x, a.x, b.x)) ||
            (o3 == 0 && within(a.x, c.x, d.x)) || (o4 == 0 && within(b.x, c.x, d.x))) {
          throw DegenerateError(c1.id(), i, c2.id(), j);
        }
        if (o1 * o2 < 0 && o3 * o4 < 0) on_cross(a, b, c, d);
      }
    }
    const auto order = b.x <=> d.x;
    if (order < 0) {
      ++i;
    } else if (order > 0) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
}

}  // namespace

std::vector<Point> crossing_points(const MonotoneCurve& c1, const MonotoneCurve& c2) {
  std::vector<Point> out;
  scan_pair(c1, c2, [&](const Point& a, const Point& b, const Point& c, const Point& d) {
    out.push_back(intersection_point(a, b, c, d));
  });
  std::sort(out.begin(), out.end(), [](const Point& p, const Point& q) { return p.x < q.x; });
  return out;
}

std::size_t crossing_count(const MonotoneCurve& c1, const MonotoneCurve& c2) {
  std::size_t n = 0;
  scan_pair(c1, c2, [&](const Point&, const Point&, const Point&, const Point&) { ++n; });
  return n;
}

std::vector<std::vector<std::size_t>> crossing_matrix(const CurveFamily& f) {
  const std::size_t m = f.size();
  std::vector<std::vector<std::size_t>> counts(m, std::vector<std::size_t>(m, 0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      counts[a][b] = counts[b][a] = crossing_count(f[a], f[b]);
    }
  }
  return counts;
}

LabelledGraph graph_from_crossings(const CurveFamily& f,
                                   const std::vector<std::vector<std::size_t>>& counts) {
  LabelledGraph g(f.labels());
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      if (counts[a][b] >= 1) g.add_edge(a, b);
    }
  }
  return g;
}

LabelledGraph intersection_graph(const CurveFamily& f) {
  return graph_from_crossings(f, crossing_matrix(f));
}

PseudosegmentCheck pseudosegment_check_from_crossings(
    const CurveFamily& f, const std::vector<std::vector<std::size_t>>& counts) {
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      if (counts[a][b] > 1) return {std::make_pair(f[a].id(), f[b].id())};
    }
  }
  return {};
}

PseudosegmentCheck is_pseudosegment_family(const CurveFamily& f) {
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      if (crossing_count(f[a], f[b]) > 1) return {std::make_pair(f[a].id(), f[b].id())};
    }
  }
  return {};
}

bool is_double_grounded(const CurveFamily& f, const Rat& x0, const Rat& x1) {
  return std::all_of(f.curves().begin(), f.curves().end(), [&](const MonotoneCurve& c) {
    return c.front().x == x0 && c.back().x == x1;
  });
}

Strip grounds_of(const CurveFamily& f) {
  if (f.empty()) {
    if (f.strip()) return *f.strip();
    throw NotDoubleGrounded("empty family without a strip has no grounds");
  }
  const Strip s = f.strip() ? *f.strip() : Strip{f[0].front().x, f[0].back().x};
  if (!is_double_grounded(f, s.x0, s.x1)) {
    throw NotDoubleGrounded("family is not double grounded on [" + s.x0.str() + ", " +
                            s.x1.str() + "]");
  }
  return s;
}

std::vector<std::size_t> crossed_throughs(const MonotoneCurve& gamma, const CurveFamily& throughs) {
  if (throughs.empty()) return {};
  Strip s;
  if (throughs.strip()) {
    s = *throughs.strip();
  } else {
    s = Strip{throughs[0].front().x, throughs[0].back().x};
    for (const auto& c : throughs.curves()) {
      if (c.front().x != s.x0 || c.back().x != s.x1) {
        throw InvalidThroughs("through-curve '" + c.id() + "' does not share the common strip");
      }
    }
  }
  for (const auto& c : throughs.curves()) {
    if (s.x0 < c.front().x || c.back().x < s.x1) {
      throw InvalidThroughs("through-curve '" + c.id() + "' does not span the strip");
    }
  }
  if (gamma.front().x < s.x0 || s.x1 < gamma.back().x) {
    throw InvalidInput("curve '" + gamma.id() + "' leaves the strip of the through-curves");
  }
  for (std::size_t a = 0; a < throughs.size(); ++a) {
    for (std::size_t b = a + 1; b < throughs.size(); ++b) {
      bool disjoint = false;
      try {
        disjoint = crossing_count(throughs[a], throughs[b]) == 0;
      } catch (const DegenerateError&) {
        disjoint = false;
      }
      if (!disjoint) {
        throw InvalidThroughs("through-curves '" + throughs[a].id() + "' and '" +
                              throughs[b].id() + "' meet");
      }
    }
  }
  std::vector<std::pair<Rat, std::size_t>> order;
  order.reserve(throughs.size());
  for (std::size_t i = 0; i < throughs.size(); ++i) order.emplace_back(throughs[i].y_at(s.x0), i);
  std::sort(order.begin(), order.end());

  std::vector<std::size_t> out;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (crossing_count(gamma, throughs[order[rank].second]) > 0) out.push_back(rank);
  }
  return out;
}

bool neighborhood_interval_check(const MonotoneCurve& gamma, const CurveFamily& throughs) {
  const auto ranks = crossed_throughs(gamma, throughs);
  if (ranks.empty()) return true;
  return ranks.back() - ranks.front() + 1 == ranks.size();
}

CurveFamily translated(const CurveFamily& f, const Rat& dy) {
  std::vector<MonotoneCurve> out;
  out.reserve(f.size());
  for (const auto& c : f.curves()) {
    std::vector<Point> pts = c.vertices();
    for (auto& p : pts) p.y += dy;
    out.emplace_back(c.id(), std::move(pts));
  }
  return CurveFamily(std::move(out), f.strip());
}

}  // namespace pseudoseg
