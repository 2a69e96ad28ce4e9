#include "pseudoseg/graph.hpp"

#include <algorithm>
#include <queue>

#include "pseudoseg/errors.hpp"

namespace pseudoseg {

LabelledGraph::LabelledGraph(std::vector<std::string> labels) : labels_(std::move(labels)) {
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw InvalidInput("duplicate vertex label '" + labels_[i] + "'");
    }
  }
  adj_.assign(labels_.size(), BitRow(labels_.size()));
}

std::optional<std::size_t> LabelledGraph::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void LabelledGraph::add_edge(std::size_t i, std::size_t j) {
  if (i == j) throw InvalidInput("self-loop on '" + labels_[i] + "'");
  adj_[i].set(j);
  adj_[j].set(i);
}

void LabelledGraph::add_edge(const std::string& a, const std::string& b) {
  auto ia = index_of(a);
  auto ib = index_of(b);
  if (!ia || !ib) throw InvalidInput("edge references unknown vertex '" + (ia ? b : a) + "'");
  add_edge(*ia, *ib);
}

std::size_t LabelledGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adj_) twice += row.count();
  return twice / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> LabelledGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < order(); ++i) {
    for (std::size_t j = adj_[i].next_set(i + 1); j < order(); j = adj_[i].next_set(j + 1)) {
      out.emplace_back(i, j);
    }
  }
  return out;
}

BitRow LabelledGraph::canonical_encoding() const {
  const std::size_t n = order();
  BitRow bits(n * (n - (n > 0 ? 1 : 0)) / 2);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if (adj_[i].test(j)) bits.set(k);
    }
  }
  return bits;
}

namespace {

void bron_kerbosch(const LabelledGraph& g, std::size_t r_size, BitRow p, BitRow x,
                   std::size_t& best) {
  if (p.none() && x.none()) {
    best = std::max(best, r_size);
    return;
  }
  if (r_size + p.count() <= best) return;
  // Pivot on the vertex of P u X with most neighbours in P.
  const std::size_t n = g.order();
  std::size_t pivot = n;
  std::size_t pivot_deg = 0;
  for (std::size_t u = 0; u < n; ++u) {
    if (!p.test(u) && !x.test(u)) continue;
    const std::size_t d = (p & g.neighbours(u)).count();
    if (pivot == n || d > pivot_deg) {
      pivot = u;
      pivot_deg = d;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!p.test(v) || g.adjacent(pivot, v)) continue;
    bron_kerbosch(g, r_size + 1, p & g.neighbours(v), x & g.neighbours(v), best);
    p.set(v, false);
    x.set(v);
  }
}

}  // namespace

std::size_t clique_number(const LabelledGraph& g) {
  const std::size_t n = g.order();
  if (n == 0) return 0;
  BitRow all(n);
  for (std::size_t i = 0; i < n; ++i) all.set(i);
  std::size_t best = 0;
  bron_kerbosch(g, 0, all, BitRow(n), best);
  return best;
}

std::optional<std::vector<int>> two_colouring(const LabelledGraph& g) {
  const std::size_t n = g.order();
  std::vector<int> colour(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (colour[s] != -1) continue;
    colour[s] = 0;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      const BitRow& nb = g.neighbours(u);
      for (std::size_t v = nb.next_set(0); v < n; v = nb.next_set(v + 1)) {
        if (colour[v] == -1) {
          colour[v] = 1 - colour[u];
          q.push(v);
        } else if (colour[v] == colour[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return colour;
}

}  // namespace pseudoseg
