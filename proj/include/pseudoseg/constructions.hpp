#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pseudoseg/geom_kernel.hpp"
#include "pseudoseg/graph.hpp"

namespace pseudoseg {

// ---------------------------------------------------------------------------
// Grid / detour construction: integer grid points become short horizontal
// segments, lines of small positive slope become x-monotone curves that
// detour around each incident point either above it or through it.

struct GridPoint {
  long a;
  long b;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct GridLine {
  long slope;
  long intercept;
  friend bool operator==(const GridLine&, const GridLine&) = default;
};

struct GridIncidence {
  long n = 0;
  long k = 0;
  std::vector<GridPoint> points;
  std::vector<GridLine> lines;
  /// Per line, indices into `points` of the incident points, by increasing a.
  std::vector<std::vector<std::size_t>> incidences;

  std::size_t total_incidences() const;
};

/// Largest integer r with r^3 <= v.
long floor_cbrt(long v);

/// Points {(a,b) : a < floor(n^(1/3)), b < floor(n^(2/3))} and lines
/// y = a'x + b' with 1 <= a' <= k-1, 0 <= b' < ceil(floor(n^(2/3))/2).
/// Throws BadParams unless n >= 8 and k <= n^(1/3).
GridIncidence build_grid(long n, long k);

enum class Detour { Avoid, Cross };

/// Per line, one Detour per incident point (aligned with g.incidences).
struct DetourChoice {
  std::vector<std::vector<Detour>> per_line;
};

DetourChoice uniform_choice(const GridIncidence& g, Detour d);
/// Bit t of `bits` selects Cross for the t-th incidence in line-major order.
DetourChoice choice_from_bits(const GridIncidence& g, std::uint64_t bits);
DetourChoice random_choice(const GridIncidence& g, std::mt19937_64& rng);

std::string point_label(const GridPoint& p);
std::string line_label(const GridLine& l);

/// Vertices: points (in g.points order) then lines. Line-line edges iff the
/// slopes differ; line-point edges iff incident and chosen Cross.
LabelledGraph combinatorial_graph(const GridIncidence& g, const DetourChoice& c);

/// Default polyline scale: 1/(2k).
Rat default_grid_scale(const GridIncidence& g);

/// Exact piecewise-linear realization. Point (a,b) becomes the segment
/// (a,b)-(a+scale,b); each line follows y = a'x + b' except in a window of
/// half-width scale/(4 a' 2^rank) around each incident point, where a
/// three-segment detour passes above the point (Avoid) or below it and then
/// up through its segment (Cross). Requires 0 < scale <= 1/(2k). The result
/// is checked to be a pseudo-segment family whose intersection graph equals
/// combinatorial_graph(g, c); RealizationFailure otherwise.
CurveFamily realize_geometric(const GridIncidence& g, const DetourChoice& c, const Rat& scale);

struct GridCensus {
  long n = 0;
  long k = 0;
  std::size_t incidences = 0;
  /// 2^incidences when it fits in 64 bits.
  std::optional<std::uint64_t> count;
  bool verified = false;
  std::size_t distinct_graphs = 0;
  std::size_t max_clique = 0;
  bool geometric_checked = false;

  double count_log2() const { return static_cast<double>(incidences); }
};

/// count = 2^I. When 2^I <= limit, enumerates every choice vector and
/// confirms 2^I distinct labelled graphs, each of clique number <= k; with
/// `geometric`, every choice is also realized and compared.
GridCensus grid_census(const GridIncidence& g, std::uint64_t limit, bool geometric = false);

// ---------------------------------------------------------------------------
// Staircase bipartite construction.

struct StaircaseChoice {
  long i;  ///< crosses the last i verticals of the left group
  long j;  ///< crosses the first j verticals of the right group
  long l;  ///< crosses the last l verticals of the middle group
  friend bool operator==(const StaircaseChoice&, const StaircaseChoice&) = default;
};

struct StaircaseParams {
  long k = 1;
  std::vector<StaircaseChoice> choices;  ///< one per horizontal segment

  std::size_t h() const { return choices.size(); }
};

/// 3k near-vertical segments (labels L1..Lk, M1..Mk, R1..Rk) followed by one
/// horizontal segment H1..Hh per choice.
CurveFamily staircase_build(const StaircaseParams& p);

/// The choice vector with index `code` in mixed radix k^3 per horizontal.
StaircaseParams staircase_params_from_index(long k, long h, std::uint64_t code);

struct StaircaseCensus {
  long k = 0;
  long h = 0;
  std::optional<std::uint64_t> count;  ///< (k^3)^h when it fits in 64 bits
  bool verified = false;
  std::size_t distinct_graphs = 0;

  double count_log2() const;
};

/// count = (k^3)^h; exhaustively realized and checked (pseudo-segments,
/// bipartite with horizontals on one side, neighbourhoods as chosen, all
/// graphs distinct) when count <= limit.
StaircaseCensus staircase_census(long k, long h, std::uint64_t limit);

}  // namespace pseudoseg
