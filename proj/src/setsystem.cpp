#include "pseudoseg/setsystem.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "pseudoseg/errors.hpp"

namespace pseudoseg {

SetFamily::SetFamily(std::size_t n, std::vector<BitRow> rows) : n_(n), rows_(std::move(rows)) {
  if (n_ == 0) throw InvalidInput("set family needs a ground set of size >= 1");
  if (rows_.empty()) throw InvalidInput("set family needs at least one row");
  for (const auto& r : rows_) {
    if (r.size() != n_) throw SizeMismatch("row length " + std::to_string(r.size()) + " != n = " + std::to_string(n_));
  }
}

SetFamily SetFamily::from_sets(std::size_t n, const std::vector<std::vector<std::size_t>>& sets) {
  std::vector<BitRow> rows;
  for (const auto& s : sets) {
    BitRow r(n);
    for (auto e : s) {
      if (e < 1 || e > n) throw InvalidInput("element " + std::to_string(e) + " outside [1," + std::to_string(n) + "]");
      r.set(e - 1);
    }
    rows.push_back(std::move(r));
  }
  return SetFamily(n, std::move(rows));
}

std::vector<BitRow> SetFamily::sorted_rows() const {
  auto out = rows_;
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t SetFamily::distinct_rows() const {
  auto s = sorted_rows();
  return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
}

SetFamily SetFamily::transpose() const {
  std::vector<BitRow> cols(n_, BitRow(rows_.size()));
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t e = rows_[r].next_set(0); e < n_; e = rows_[r].next_set(e + 1)) cols[e].set(r);
  }
  return SetFamily(rows_.size(), std::move(cols));
}

bool same_multiset(const SetFamily& a, const SetFamily& b) {
  return a.n() == b.n() && a.sorted_rows() == b.sorted_rows();
}

std::size_t sym_diff_distance(const BitRow& a, const BitRow& b) {
  if (a.size() != b.size()) {
    throw SizeMismatch("ground sizes differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  return BitRow::distance(a, b);
}

namespace {

// C(n,z), saturated at cap+1.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t z, std::uint64_t cap) {
  if (z > n) return 0;
  z = std::min(z, n - z);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= z; ++i) {
    c = c * (n - z + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(c);
}

std::size_t trace_upper_bound(const SetFamily& f, std::size_t z) {
  const std::size_t d = f.distinct_rows();
  if (z >= 63) return d;
  return std::min<std::size_t>(d, std::size_t{1} << z);
}

std::size_t traces_on(const SetFamily& f, const std::vector<std::size_t>& subset) {
  const std::size_t z = subset.size();
  const std::size_t words = (z + 63) / 64;
  std::vector<std::uint64_t> keys(f.m() * std::max<std::size_t>(words, 1), 0);
  for (std::size_t r = 0; r < f.m(); ++r) {
    std::uint64_t* key = &keys[r * words];
    for (std::size_t b = 0; b < z; ++b) {
      if (f[r].test(subset[b])) key[b >> 6] |= std::uint64_t{1} << (b & 63);
    }
  }
  if (words <= 1) {
    std::sort(keys.begin(), keys.end());
    return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
  }
  std::vector<std::vector<std::uint64_t>> split;
  for (std::size_t r = 0; r < f.m(); ++r) split.emplace_back(keys.begin() + r * words, keys.begin() + (r + 1) * words);
  std::sort(split.begin(), split.end());
  return static_cast<std::size_t>(std::unique(split.begin(), split.end()) - split.begin());
}

}  // namespace

std::size_t primal_shatter(const SetFamily& f, std::size_t z, std::uint64_t budget) {
  if (z == 0) return 1;
  if (z > f.n()) throw InvalidInput("z = " + std::to_string(z) + " exceeds n = " + std::to_string(f.n()));
  const std::size_t ub = trace_upper_bound(f, z);
  if (ub <= 1) return ub;
  const std::uint64_t subsets = binomial_capped(f.n(), z, budget);
  if (subsets > budget || subsets * f.m() > budget) {
    throw BudgetExceeded("shatter search C(" + std::to_string(f.n()) + "," + std::to_string(z) + ")*" +
                         std::to_string(f.m()) + " exceeds budget " + std::to_string(budget));
  }
  std::vector<std::size_t> idx(z);
  std::iota(idx.begin(), idx.end(), 0);
  std::size_t best = 0;
  while (true) {
    best = std::max(best, traces_on(f, idx));
    if (best == ub) return best;
    // next combination in lexicographic order
    std::size_t i = z;
    while (i > 0 && idx[i - 1] == f.n() - z + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < z; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

std::size_t dual_shatter(const SetFamily& f, std::size_t z, std::uint64_t budget) {
  return primal_shatter(f.transpose(), z, budget);
}

std::size_t vc_dimension(const SetFamily& f, std::uint64_t budget) {
  std::size_t d = 0;
  for (std::size_t z = 1; z <= f.n() && z < 63; ++z) {
    if ((std::size_t{1} << z) > f.distinct_rows()) break;
    if (primal_shatter(f, z, budget) != (std::size_t{1} << z)) break;
    d = z;
  }
  return d;
}

bool is_separated(const SetFamily& f, std::size_t delta) {
  for (std::size_t a = 0; a < f.m(); ++a) {
    for (std::size_t b = a + 1; b < f.m(); ++b) {
      if (BitRow::distance(f[a], f[b]) < delta) return false;
    }
  }
  return true;
}

GreedyOrdering greedy_ordering(const SetFamily& f) {
  const std::size_t m = f.m();
  // rank[r]: position of row r in the (value, index) linear order
  std::vector<std::size_t> by_value(m);
  std::iota(by_value.begin(), by_value.end(), 0);
  std::stable_sort(by_value.begin(), by_value.end(), [&](auto a, auto b) { return f[a] < f[b]; });
  std::vector<std::size_t> rank(m);
  for (std::size_t p = 0; p < m; ++p) rank[by_value[p]] = p;

  GreedyOrdering g;
  std::vector<bool> used(m, false);
  std::vector<std::size_t> mind(m, 0), argmin(m, 0);
  auto take = [&](std::size_t r) {
    used[r] = true;
    g.order.push_back(r);
    const std::size_t pos = g.order.size();  // 1-based position of r
    for (std::size_t q = 0; q < m; ++q) {
      if (used[q]) continue;
      const std::size_t d = BitRow::distance(f[q], f[r]);
      if (pos == 1 || d < mind[q]) {
        mind[q] = d;
        argmin[q] = pos;
      }
    }
  };
  take(by_value[0]);
  for (std::size_t i = 2; i <= m; ++i) {
    std::size_t pick = m;
    for (std::size_t q = 0; q < m; ++q) {
      if (used[q]) continue;
      if (pick == m || mind[q] > mind[pick] || (mind[q] == mind[pick] && rank[q] < rank[pick])) pick = q;
    }
    g.pointers.push_back(argmin[pick]);
    g.deltas.push_back(mind[pick]);
    take(pick);
  }
  return g;
}

std::size_t ceil_log2(std::uint64_t v) {
  if (v <= 1) return 0;
  return static_cast<std::size_t>(64 - std::countl_zero(v - 1));
}

namespace {

class BitWriter {
 public:
  void put(std::uint64_t value, std::size_t width) {
    for (std::size_t b = width; b-- > 0;) bit((value >> b) & 1U);
  }
  void bit(bool v) {
    if (len_ % 8 == 0) bytes_.push_back(0);
    if (v) bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (len_ % 8));
    ++len_;
  }
  std::size_t size() const { return len_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t len_ = 0;
};

class BitReader {
 public:
  BitReader(const std::vector<std::uint8_t>& bytes, std::size_t limit) : bytes_(bytes), limit_(limit) {}
  std::uint64_t get(std::size_t width, const char* what) {
    if (width > remaining()) throw MalformedStream(std::string("stream truncated while reading ") + what);
    std::uint64_t v = 0;
    for (std::size_t b = 0; b < width; ++b) v = (v << 1) | bit();
    return v;
  }
  bool bit() {
    const bool v = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1U;
    ++pos_;
    return v;
  }
  std::size_t remaining() const { return limit_ - pos_; }
  std::size_t position() const { return pos_; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t limit_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string CodecOutput::bitstring() const {
  std::string s;
  s.reserve(bit_length);
  for (std::size_t i = 0; i < bit_length; ++i) s.push_back(((bytes[i / 8] >> (7 - i % 8)) & 1U) ? '1' : '0');
  return s;
}

CodecOutput CodecOutput::from_bytes(std::vector<std::uint8_t> bytes) {
  CodecOutput c;
  c.bit_length = bytes.size() * 8;
  c.bytes = std::move(bytes);
  return c;
}

CodecOutput encode(const SetFamily& f) { return encode(f, greedy_ordering(f)); }

CodecOutput encode(const SetFamily& f, const GreedyOrdering& g) {
  const std::size_t n = f.n(), m = f.m();
  const std::size_t wj = ceil_log2(m), wt = ceil_log2(n + 1), wi = ceil_log2(n);
  BitWriter w;
  w.put(n, 64);
  w.put(m, 64);
  const BitRow& first = f[g.order[0]];
  for (std::size_t e = 0; e < n; ++e) w.bit(first.test(e));
  for (std::size_t i = 1; i < m; ++i) {
    const std::size_t j = g.pointers[i - 1];
    const BitRow diff = f[g.order[i]] ^ f[g.order[j - 1]];
    w.put(j - 1, wj);
    w.put(diff.count(), wt);
    for (std::size_t e = diff.next_set(0); e < n; e = diff.next_set(e + 1)) w.put(e, wi);
  }
  CodecOutput c;
  c.bit_length = w.size();
  c.bytes = w.take();
  c.n = n;
  c.m = m;
  return c;
}

SetFamily decode(const CodecOutput& c) {
  if (c.bit_length > c.bytes.size() * 8) throw MalformedStream("bit length exceeds byte buffer");
  BitReader r(c.bytes, c.bit_length);
  const std::uint64_t n = r.get(64, "header n");
  const std::uint64_t m = r.get(64, "header m");
  if (n == 0 || m == 0) throw MalformedStream("header declares an empty family");
  if (n > r.remaining()) throw MalformedStream("stream truncated while reading the first row");
  const std::size_t wj = ceil_log2(m), wt = ceil_log2(n + 1), wi = ceil_log2(n);
  if (m > 1 && (m - 1) > r.remaining() / (wj + wt)) throw MalformedStream("stream too short for the declared m");

  std::vector<BitRow> rows;
  rows.reserve(m);
  BitRow first(n);
  for (std::size_t e = 0; e < n; ++e) first.set(e, r.bit());
  rows.push_back(std::move(first));
  for (std::uint64_t i = 1; i < m; ++i) {
    const std::uint64_t j = r.get(wj, "pointer");
    if (j >= i) throw MalformedStream("pointer " + std::to_string(j + 1) + " does not precede record " + std::to_string(i + 1));
    const std::uint64_t t = r.get(wt, "delta");
    if (t > n) throw MalformedStream("delta " + std::to_string(t) + " exceeds n");
    BitRow row = rows[j];
    std::uint64_t prev = 0;
    for (std::uint64_t k = 0; k < t; ++k) {
      const std::uint64_t e = r.get(wi, "element index");
      if (e >= n) throw MalformedStream("element index out of range");
      if (k > 0 && e <= prev) throw MalformedStream("element indices not strictly increasing");
      row.flip(e);
      prev = e;
    }
    rows.push_back(std::move(row));
  }
  const std::size_t used = r.position();
  if ((used + 7) / 8 != c.bytes.size()) throw MalformedStream("trailing bytes after the last record");
  for (std::size_t pos = used; pos < c.bytes.size() * 8; ++pos) {
    if ((c.bytes[pos / 8] >> (7 - pos % 8)) & 1U) throw MalformedStream("nonzero padding");
  }
  return SetFamily(n, std::move(rows));
}

std::size_t codec_length_bound(std::size_t n, std::size_t m, const std::vector<std::size_t>& deltas) {
  const std::size_t sum = std::accumulate(deltas.begin(), deltas.end(), std::size_t{0});
  return 128 + n + (m - 1) * (ceil_log2(m) + ceil_log2(n + 1)) + ceil_log2(n) * sum;
}

PackingReport packing_check(const SetFamily& f, const Rat& c, long d, std::size_t z_max, std::uint64_t budget) {
  if (d < 1) throw BadParams("d must be positive");
  if (c.sign() <= 0) throw BadParams("c must be positive");
  if (z_max == 0 || z_max > f.n()) z_max = f.n();
  for (std::size_t z = 1; z <= z_max; ++z) {
    Rat cap = c;
    for (long e = 0; e < d; ++e) cap = cap * Rat(static_cast<long>(z));
    // The exact search is only needed when the trivial bound does not settle it.
    if (Rat(static_cast<long>(trace_upper_bound(f, z))) <= cap) continue;
    const std::size_t v = primal_shatter(f, z, budget);
    if (cap < Rat(static_cast<long>(v))) throw ShatterHypothesisFailed(z, v);
  }
  PackingReport rep;
  rep.ordering = greedy_ordering(f);
  const Rat n(static_cast<long>(f.n()));
  for (std::size_t i = 2; i <= f.m(); ++i) {
    const std::size_t delta = rep.ordering.deltas[i - 2];
    if (delta == 0) continue;
    Rat ratio(static_cast<long>(i));
    const Rat q = Rat(static_cast<long>(delta)) / n;
    for (long e = 0; e < d; ++e) ratio = ratio * q;
    if (!rep.max_ratio || *rep.max_ratio < ratio) rep.max_ratio = ratio;
    rep.per_prefix.push_back({i, delta, ratio});
  }
  return rep;
}

SetFamily read_set_family(std::istream& in) {
  std::size_t n = 0, m = 0;
  if (!(in >> n >> m)) throw InvalidInput("set family: expected header 'n m'");
  std::vector<BitRow> rows;
  for (std::size_t r = 0; r < m; ++r) {
    std::string line;
    if (!(in >> line)) throw InvalidInput("set family: missing row " + std::to_string(r + 1));
    if (line.size() != n) throw SizeMismatch("set family: row " + std::to_string(r + 1) + " has length " + std::to_string(line.size()));
    BitRow row(n);
    for (std::size_t e = 0; e < n; ++e) {
      if (line[e] == '1') {
        row.set(e);
      } else if (line[e] != '0') {
        throw InvalidInput("set family: row " + std::to_string(r + 1) + " contains '" + line[e] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  std::string extra;
  if (in >> extra) throw InvalidInput("set family: trailing data after " + std::to_string(m) + " rows");
  return SetFamily(n, std::move(rows));
}

void write_set_family(std::ostream& out, const SetFamily& f) {
  out << f.n() << ' ' << f.m() << '\n';
  for (const auto& r : f.rows()) out << r.to_string() << '\n';
}

}  // namespace pseudoseg
