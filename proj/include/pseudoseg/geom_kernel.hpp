#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pseudoseg/graph.hpp"
#include "pseudoseg/rational.hpp"

namespace pseudoseg {

struct Point {
  Rat x;
  Rat y;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Piecewise-linear curve with strictly increasing vertex x-coordinates, so
/// that every vertical line meets it at most once.
class MonotoneCurve {
 public:
  MonotoneCurve(std::string id, std::vector<Point> vertices);

  const std::string& id() const { return id_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& front() const { return vertices_.front(); }
  const Point& back() const { return vertices_.back(); }
  std::size_t segment_count() const { return vertices_.size() - 1; }

  /// y-coordinate of the curve at abscissa x; x must lie in [front.x, back.x].
  Rat y_at(const Rat& x) const;

 private:
  std::string id_;
  std::vector<Point> vertices_;
};

struct Strip {
  Rat x0;
  Rat x1;
  friend bool operator==(const Strip&, const Strip&) = default;
};

/// Curves with distinct labels, optionally confined to a vertical strip.
class CurveFamily {
 public:
  CurveFamily() = default;
  explicit CurveFamily(std::vector<MonotoneCurve> curves, std::optional<Strip> strip = {});

  const std::vector<MonotoneCurve>& curves() const { return curves_; }
  const MonotoneCurve& operator[](std::size_t i) const { return curves_[i]; }
  std::size_t size() const { return curves_.size(); }
  bool empty() const { return curves_.empty(); }
  const std::optional<Strip>& strip() const { return strip_; }
  std::optional<std::size_t> find(const std::string& id) const;
  std::vector<std::string> labels() const;

  void add(MonotoneCurve c);

 private:
  std::vector<MonotoneCurve> curves_;
  std::optional<Strip> strip_;
};

/// Sign of the cross product (b - a) x (c - a).
int orientation(const Point& a, const Point& b, const Point& c);

/// Transversal crossing points of two generic curves, sorted by x.
/// Throws DegenerateError when a vertex of one curve lies on the other.
std::vector<Point> crossing_points(const MonotoneCurve& c1, const MonotoneCurve& c2);

/// Number of connected components of c1 n c2 (each a transversal crossing
/// under genericity).
std::size_t crossing_count(const MonotoneCurve& c1, const MonotoneCurve& c2);

/// Symmetric matrix of pairwise crossing counts (diagonal zero).
std::vector<std::vector<std::size_t>> crossing_matrix(const CurveFamily& f);

/// Edge {a,b} iff the curves cross at least once; vertices in family order.
LabelledGraph intersection_graph(const CurveFamily& f);
LabelledGraph graph_from_crossings(const CurveFamily& f,
                                   const std::vector<std::vector<std::size_t>>& counts);

struct PseudosegmentCheck {
  /// First pair (in family order) crossing more than once.
  std::optional<std::pair<std::string, std::string>> violation;
  bool ok() const { return !violation.has_value(); }
};

PseudosegmentCheck is_pseudosegment_family(const CurveFamily& f);
PseudosegmentCheck pseudosegment_check_from_crossings(
    const CurveFamily& f, const std::vector<std::vector<std::size_t>>& counts);

/// Every curve starts at x = x0 and ends at x = x1.
bool is_double_grounded(const CurveFamily& f, const Rat& x0, const Rat& x1);

/// The strip of a double-grounded family: its declared strip if present,
/// otherwise the common first/last abscissa. Throws NotDoubleGrounded.
Strip grounds_of(const CurveFamily& f);

/// Indices (in bottom-to-top order of `throughs`) of the through-curves that
/// gamma crosses. Validates the through-curves as for
/// neighborhood_interval_check.
std::vector<std::size_t> crossed_throughs(const MonotoneCurve& gamma, const CurveFamily& throughs);

/// True iff the through-curves crossed by gamma form a contiguous block of
/// their vertical order. Valid inputs always yield true.
bool neighborhood_interval_check(const MonotoneCurve& gamma, const CurveFamily& throughs);

/// The family shifted by dy in y.
CurveFamily translated(const CurveFamily& f, const Rat& dy);

}  // namespace pseudoseg
