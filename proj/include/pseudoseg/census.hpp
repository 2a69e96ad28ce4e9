#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pseudoseg/geom_kernel.hpp"

namespace pseudoseg {

// ---------------------------------------------------------------------------
// Recursive strip splitting at the median interior endpoint.

struct SplitNode {
  Strip strip;
  std::vector<std::string> through;   ///< curves spanning the node strip
  std::vector<std::string> endpoint;  ///< curves with an endpoint strictly inside
  std::size_t p = 0;                  ///< endpoints strictly inside
  std::size_t depth = 1;              ///< root is level 1
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;

  bool leaf() const { return !left.has_value(); }
};

struct SplitTree {
  std::vector<SplitNode> nodes;  ///< nodes[0] is the root

  std::size_t depth() const;
  std::size_t leaves() const;
};

/// Strip: the family's declared strip, else the x-span of its curves.
/// SharedEndpointX when two interior endpoints share an abscissa.
SplitTree strip_split(const CurveFamily& f);

/// Recomputes every node from scratch; returns human readable violations of
/// the halving, classification and depth invariants (empty when valid).
std::vector<std::string> split_tree_violations(const SplitTree& t, const CurveFamily& f);

// ---------------------------------------------------------------------------

/// Partition of positions 1..t into increasing subsequences of `perm`
/// (values 1..t), one class per pile of the patience greedy.
std::vector<std::vector<std::size_t>> dilworth_color(const std::vector<std::size_t>& perm);

/// Right-ground rank (1-based) of each through-curve, listed in left order.
std::vector<std::size_t> through_permutation(const CurveFamily& throughs);

// ---------------------------------------------------------------------------

struct TraceBound {
  std::size_t max_primal = 0;
  std::size_t bound = 0;
  bool ok = false;
};

/// Rows: neighbourhoods of A's curves in B. Exact π(z) vs (z+1)(2z+1).
TraceBound trace_bound_check(const CurveFamily& a, const CurveFamily& b, std::size_t z);

struct DualTraceBound {
  std::size_t max_patterns = 0;  ///< over z-subsets S of A: distinct traces of B on S
  std::size_t max_cells = 0;     ///< largest decomposition of a z-subset
  bool ok = false;               ///< every subset: patterns <= t(t+1)/2
};

DualTraceBound dual_trace_bound_check(const CurveFamily& a, const CurveFamily& b, std::size_t z);

// ---------------------------------------------------------------------------

struct DoubleGroundedCensus {
  std::uint64_t graph_count = 0;
  std::uint64_t class_count = 0;
};

/// Every left-ground order of labelled wires 1..m and every partial
/// allowable sequence from it (m <= 4, TooLarge beyond).
DoubleGroundedCensus enumerate_double_grounded(int m);

struct HRelation {
  std::uint64_t lhs = 0;  ///< multiset systems of size m
  std::uint64_t rhs = 0;  ///< sum over m' of set systems of size m' times C(m-1, m'-1)
  bool holds() const { return lhs == rhs; }
};

/// Exhaustive over n <= 3, m <= 4; systems counted when π(z) <= c z^d for
/// z = 1..n.
HRelation verify_h_relation(int n, int m, const Rat& c, long d);

/// Experiment description: {"grid":[[n,k],...], "staircase":[[k,h],...],
/// "double_grounded":[m,...]}; writes the CSV header and one row per run.
void bound_table(const nlohmann::json& experiment, std::ostream& out);

}  // namespace pseudoseg
