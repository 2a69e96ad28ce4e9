#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pseudoseg/bitrow.hpp"
#include "pseudoseg/rational.hpp"

namespace pseudoseg {

/// Multiset of m subsets of {1..n}; each row is a length-n membership vector.
class SetFamily {
 public:
  SetFamily(std::size_t n, std::vector<BitRow> rows);
  /// Rows given as lists of 1-based elements.
  static SetFamily from_sets(std::size_t n, const std::vector<std::vector<std::size_t>>& sets);

  std::size_t n() const { return n_; }
  std::size_t m() const { return rows_.size(); }
  const std::vector<BitRow>& rows() const { return rows_; }
  const BitRow& operator[](std::size_t i) const { return rows_[i]; }

  /// Rows in increasing integer order (the multiset identity).
  std::vector<BitRow> sorted_rows() const;
  std::size_t distinct_rows() const;
  /// Columns become rows: n rows over a ground set of size m.
  SetFamily transpose() const;

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  std::size_t n_;
  std::vector<BitRow> rows_;
};

bool same_multiset(const SetFamily& a, const SetFamily& b);

/// |A xor B|; SizeMismatch on different ground sizes.
std::size_t sym_diff_distance(const BitRow& a, const BitRow& b);

/// Cap on elementary trace operations for the exact shatter searches.
inline constexpr std::uint64_t kShatterBudget = 100'000'000;

/// max over z-subsets V of |{A ∩ V}|. BudgetExceeded when C(n,z)·m > budget.
std::size_t primal_shatter(const SetFamily& f, std::size_t z, std::uint64_t budget = kShatterBudget);
std::size_t dual_shatter(const SetFamily& f, std::size_t z, std::uint64_t budget = kShatterBudget);
std::size_t vc_dimension(const SetFamily& f, std::uint64_t budget = kShatterBudget);
bool is_separated(const SetFamily& f, std::size_t delta);

/// Farthest-first ordering. `order` holds row indices, `pointers[i]` and
/// `deltas[i]` describe position i+2 (1-based positions, as j_i and δ_i).
struct GreedyOrdering {
  std::vector<std::size_t> order;
  std::vector<std::size_t> pointers;
  std::vector<std::size_t> deltas;
};

GreedyOrdering greedy_ordering(const SetFamily& f);

struct CodecOutput {
  std::vector<std::uint8_t> bytes;  ///< MSB-first, zero padded
  std::size_t bit_length = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;

  std::string bitstring() const;
  /// Wrap raw file contents; bit_length is taken as the full byte length.
  static CodecOutput from_bytes(std::vector<std::uint8_t> bytes);
};

std::size_t ceil_log2(std::uint64_t v);

CodecOutput encode(const SetFamily& f);
CodecOutput encode(const SetFamily& f, const GreedyOrdering& g);
/// Rows come back in greedy order. MalformedStream on any framing error.
SetFamily decode(const CodecOutput& c);

/// 128 + n + (m-1)(⌈log2 m⌉ + ⌈log2(n+1)⌉) + ⌈log2 n⌉·Σδ.
std::size_t codec_length_bound(std::size_t n, std::size_t m, const std::vector<std::size_t>& deltas);

struct PackingEntry {
  std::size_t i;
  std::size_t delta;
  Rat ratio;  ///< i·(δ_i/n)^d
};

struct PackingReport {
  std::optional<Rat> max_ratio;
  std::vector<PackingEntry> per_prefix;
  GreedyOrdering ordering;
};

/// Checks π(z) <= c·z^d for z = 1..z_max (z_max = 0 means n) and reports the
/// packing ratios of the greedy ordering. ShatterHypothesisFailed otherwise.
PackingReport packing_check(const SetFamily& f, const Rat& c, long d, std::size_t z_max = 0,
                            std::uint64_t budget = kShatterBudget);

// Text format: "n m" then m lines of n characters in {0,1}.
SetFamily read_set_family(std::istream& in);
void write_set_family(std::ostream& out, const SetFamily& f);

}  // namespace pseudoseg
