#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pseudoseg/geom_kernel.hpp"

namespace pseudoseg {

/// One adjacent transposition: the wires at positions pos and pos+1 (1-based,
/// bottom to top) exchange; `lower` is the wire at pos before the swap.
struct Swap {
  std::size_t pos;
  std::string lower;
  std::string upper;
  friend bool operator==(const Swap&, const Swap&) = default;
};

/// Partial allowable sequence: wires in bottom-to-top order at the left
/// ground, then adjacent swaps left to right, each pair at most once.
class WiringDiagram {
 public:
  WiringDiagram(std::vector<std::string> wires, std::vector<Swap> swaps);

  const std::vector<std::string>& wires() const { return wires_; }
  const std::vector<Swap>& swaps() const { return swaps_; }
  std::size_t m() const { return wires_.size(); }
  /// Bottom-to-top order after all swaps.
  std::vector<std::string> final_order() const;

  friend bool operator==(const WiringDiagram&, const WiringDiagram&) = default;

 private:
  std::vector<std::string> wires_;
  std::vector<Swap> swaps_;
};

/// Swapping wires given only by position; annotations are filled in.
WiringDiagram diagram_from_positions(std::vector<std::string> wires, const std::vector<std::size_t>& positions);

/// Crossing events (x, i, j) of a pseudo-segment family sorted by x; requires
/// pairwise distinct crossing abscissae (SharedCrossingX).
struct CrossingEvent {
  Point at;
  std::size_t i;
  std::size_t j;
};
std::vector<CrossingEvent> sorted_crossings(const CurveFamily& f);

WiringDiagram sweep(const CurveFamily& f);

/// Swapped pairs in sweep order, wires named by their initial rank.
std::string x_iso_canonical(const WiringDiagram& w);

/// Complete allowable sequences on m <= 5 wires (TooLarge beyond).
std::uint64_t enumerate_full_allowable(int m);

struct Face {
  std::size_t gap;                 ///< 0 = below every wire, m = above
  std::size_t sides;               ///< wire edges on the boundary
  std::vector<std::string> wires;  ///< wires contributing at least one side
};

std::vector<Face> faces(const WiringDiagram& w);
std::size_t zone_complexity(const WiringDiagram& w, const std::string& wire);

/// Random partial allowable sequence; `swaps` legal swaps are applied, or a
/// uniform count in [0, C(m,2)] when unset.
WiringDiagram random_wiring_diagram(std::size_t m, std::mt19937_64& rng, std::optional<std::size_t> swaps = {});

// Text format: "m", then one "pos a b" line per swap; wires are 1..m by
// initial rank.
WiringDiagram read_wiring_text(std::istream& in);
void write_wiring_text(std::ostream& out, const WiringDiagram& w);

// ---------------------------------------------------------------------------

enum class WallOrigin { Ground, Crossing, Endpoint };

struct Wall {
  Rat x;
  WallOrigin origin;
};

struct Cell {
  std::size_t gap;
  std::optional<std::string> bottom;  ///< nullopt = -infinity
  std::optional<std::string> top;     ///< nullopt = +infinity
  Wall left;
  Wall right;
  std::vector<std::string> crossings;  ///< probe curves meeting the open cell
};

struct VerticalDecomposition {
  Strip strip;
  std::vector<Cell> cells;
  std::vector<std::pair<std::size_t, std::size_t>> adjacency;  ///< across walls

  std::size_t size() const { return cells.size(); }
  std::size_t max_crossings() const;
};

/// Walls from every crossing up and down to the neighbouring curves, inside
/// the strip [x0,x1]. With `probes`, each cell lists the probe curves (other
/// than the decomposed ones, matched by label) that meet its interior.
VerticalDecomposition vertical_decomposition(const CurveFamily& f, const Rat& x0, const Rat& x1,
                                             const CurveFamily* probes = nullptr);

struct CuttingResult {
  std::vector<std::string> sample;
  VerticalDecomposition decomposition;
  Rat r;
  std::size_t attempts = 0;
  std::size_t max_crossing = 0;
};

/// min(ceil(6 r ln m), m).
std::size_t cutting_sample_size(std::size_t m, const Rat& r);

/// Las Vegas sampling until every cell is met by at most m/r curves.
CuttingResult weak_cutting(const CurveFamily& f, const Rat& r, std::uint64_t seed);

}  // namespace pseudoseg
