#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pseudoseg/bitrow.hpp"

namespace pseudoseg {

/// Simple undirected graph on labelled vertices. Vertex identity is the
/// label; two graphs compare equal iff they have the same label sequence and
/// the same adjacency.
class LabelledGraph {
 public:
  LabelledGraph() = default;
  explicit LabelledGraph(std::vector<std::string> labels);

  std::size_t order() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  void add_edge(std::size_t i, std::size_t j);
  void add_edge(const std::string& a, const std::string& b);
  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i].test(j); }
  const BitRow& neighbours(std::size_t i) const { return adj_[i]; }
  std::size_t degree(std::size_t i) const { return adj_[i].count(); }
  std::size_t edge_count() const;

  /// Edges as index pairs (i < j) in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  /// Upper-triangular adjacency bits, row-major over i < j. Two graphs on the
  /// same label sequence are equal iff their encodings are equal.
  BitRow canonical_encoding() const;

  friend bool operator==(const LabelledGraph& a, const LabelledGraph& b) {
    return a.labels_ == b.labels_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<BitRow> adj_;
};

/// Size of a maximum clique (Bron-Kerbosch with pivoting).
std::size_t clique_number(const LabelledGraph& g);

/// A proper 2-colouring (0/1 per vertex), or nullopt if the graph has an odd
/// cycle.
std::optional<std::vector<int>> two_colouring(const LabelledGraph& g);

}  // namespace pseudoseg
