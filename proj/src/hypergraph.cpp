#include "hohl/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hohl {

WeightedAdjacency WeightedAdjacency::from_triplets(
    int n_vertices, std::vector<std::pair<std::pair<int, int>, double>> triplets) {
  WeightedAdjacency adj(n_vertices);
  // mirror every undirected edge, then sort-merge duplicates
  std::vector<std::pair<std::pair<int, int>, double>> dir;
  dir.reserve(triplets.size() * 2);
  for (const auto& [ij, w] : triplets) {
    auto [i, j] = ij;
    if (i == j) throw std::invalid_argument("adjacency: diagonal entry not allowed");
    if (i < 0 || j < 0 || i >= n_vertices || j >= n_vertices)
      throw std::out_of_range("adjacency: vertex index out of range");
    if (w < 0.0) throw std::invalid_argument("adjacency: negative weight");
    dir.push_back({{i, j}, w});
    dir.push_back({{j, i}, w});
  }
  // stable: mirrored duplicate groups accumulate in the same order, so
  // symmetry is exact in floating point
  std::stable_sort(dir.begin(), dir.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::size_t> counts(n_vertices + 1, 0);
  for (std::size_t k = 0; k < dir.size();) {
    std::size_t m = k + 1;
    while (m < dir.size() && dir[m].first == dir[k].first) ++m;
    double w = 0.0;
    for (std::size_t t = k; t < m; ++t) w += dir[t].second;
    adj.cols_.push_back(dir[k].first.second);
    adj.vals_.push_back(w);
    ++counts[dir[k].first.first + 1];
    k = m;
  }
  for (int i = 0; i < n_vertices; ++i) counts[i + 1] += counts[i];
  adj.offsets_ = std::move(counts);
  return adj;
}

double WeightedAdjacency::entry(int i, int j) const {
  if (i == j) return 0.0;
  const int* c = row_cols(i);
  int m = row_size(i);
  const int* it = std::lower_bound(c, c + m, j);
  if (it != c + m && *it == j) return row_vals(i)[it - c];
  return 0.0;
}

double WeightedAdjacency::degree(int i) const {
  double d = 0.0;
  const double* v = row_vals(i);
  for (int k = 0; k < row_size(i); ++k) d += v[k];
  return d;
}

WeightedAdjacency& WeightedAdjacency::operator+=(const WeightedAdjacency& other) {
  if (other.n_ != n_) throw std::invalid_argument("adjacency sum: size mismatch");
  std::vector<std::pair<std::pair<int, int>, double>> trip;
  auto collect = [&trip](const WeightedAdjacency& a) {
    for (int i = 0; i < a.n_; ++i) {
      const int* c = a.row_cols(i);
      const double* v = a.row_vals(i);
      for (int k = 0; k < a.row_size(i); ++k)
        if (i < c[k]) trip.push_back({{i, c[k]}, v[k]});
    }
  };
  collect(*this);
  collect(other);
  *this = from_triplets(n_, std::move(trip));
  return *this;
}

bool WeightedAdjacency::structurally_symmetric() const {
  for (int i = 0; i < n_; ++i) {
    const int* c = row_cols(i);
    const double* v = row_vals(i);
    for (int k = 0; k < row_size(i); ++k) {
      if (c[k] == i) return false;
      if (entry(c[k], i) != v[k]) return false;
    }
  }
  return true;
}

Hypergraph::Hypergraph(int n_vertices, std::vector<std::vector<int>> hyperedges,
                       std::vector<double> weights)
    : n_(n_vertices), edges_(std::move(hyperedges)), weights_(std::move(weights)) {
  if (weights_.empty()) weights_.assign(edges_.size(), 1.0);
  if (weights_.size() != edges_.size())
    throw std::invalid_argument("hypergraph: weight count does not match hyperedge count");
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto& verts = edges_[e];
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.size() < 2)
      throw std::invalid_argument("hypergraph: hyperedge with fewer than 2 distinct vertices");
    if (verts.front() < 0 || verts.back() >= n_)
      throw std::out_of_range("hypergraph: vertex index out of range");
    if (weights_[e] < 0.0 || !std::isfinite(weights_[e]))
      throw std::invalid_argument("hypergraph: invalid hyperedge weight");
  }
}

int Hypergraph::max_order() const {
  std::size_t m = 0;
  for (const auto& e : edges_) m = std::max(m, e.size());
  return m == 0 ? 0 : static_cast<int>(m) - 1;
}

std::vector<int> Hypergraph::distinct_sizes_descending() const {
  std::vector<int> sizes;
  for (const auto& e : edges_) sizes.push_back(static_cast<int>(e.size()));
  std::sort(sizes.begin(), sizes.end(), std::greater<int>());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

std::map<int, int> Hypergraph::size_histogram() const {
  std::map<int, int> hist;
  for (const auto& e : edges_) ++hist[static_cast<int>(e.size())];
  return hist;
}

Hypergraph Hypergraph::read(std::istream& in, int n_vertices) {
  std::vector<std::vector<int>> edges;
  std::vector<double> weights;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ss(line);
    std::vector<int> verts;
    double w = 1.0;
    std::string tok;
    while (ss >> tok) {
      if (tok.rfind("w=", 0) == 0) {
        try {
          w = std::stod(tok.substr(2));
        } catch (const std::exception&) {
          throw std::runtime_error("hyperedge file line " + std::to_string(lineno) +
                                   ": bad weight token '" + tok + "'");
        }
      } else {
        try {
          verts.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          throw std::runtime_error("hyperedge file line " + std::to_string(lineno) +
                                   ": bad vertex token '" + tok + "'");
        }
      }
    }
    if (verts.empty()) continue;
    edges.push_back(std::move(verts));
    weights.push_back(w);
  }
  return Hypergraph(n_vertices, std::move(edges), std::move(weights));
}

void Hypergraph::write(std::ostream& out) const {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    for (std::size_t k = 0; k < edges_[e].size(); ++k) {
      if (k) out << ' ';
      out << edges_[e][k];
    }
    if (weights_[e] != 1.0) out << " w=" << weights_[e];
    out << '\n';
  }
}

namespace {

WeightedAdjacency pairs_of(const Hypergraph& h, const std::vector<std::size_t>& which) {
  std::vector<std::pair<std::pair<int, int>, double>> trip;
  for (std::size_t e : which) {
    const auto& verts = h.hyperedges()[e];
    double w = h.weights()[e];
    for (std::size_t a = 0; a < verts.size(); ++a)
      for (std::size_t b = a + 1; b < verts.size(); ++b)
        trip.push_back({{verts[a], verts[b]}, w});
  }
  return WeightedAdjacency::from_triplets(h.n_vertices(), std::move(trip));
}

}  // namespace

std::map<int, WeightedAdjacency> skeleton_decompose(const Hypergraph& h) {
  std::map<int, std::vector<std::size_t>> by_size;
  for (std::size_t e = 0; e < h.hyperedges().size(); ++e)
    by_size[static_cast<int>(h.hyperedges()[e].size())].push_back(e);
  std::map<int, WeightedAdjacency> out;
  for (const auto& [s, which] : by_size) out.emplace(s, pairs_of(h, which));
  return out;
}

std::vector<std::vector<int>> segment_sizes(const Hypergraph& h, int q) {
  if (q < 1) throw std::invalid_argument("group_segments: q must be >= 1");
  if (h.n_hyperedges() == 0)
    throw std::invalid_argument("group_segments: hypergraph has no hyperedges");
  std::vector<int> sizes = h.distinct_sizes_descending();
  int m = static_cast<int>(sizes.size());
  if (q > m)
    throw std::invalid_argument(
        "group_segments: q = " + std::to_string(q) + " exceeds the " + std::to_string(m) +
        " distinct hyperedge size(s); reduce q");
  // uniform split, remainder to earlier segments
  std::vector<std::vector<int>> segs(q);
  int base = m / q, rem = m % q, pos = 0;
  for (int k = 0; k < q; ++k) {
    int len = base + (k < rem ? 1 : 0);
    segs[k].assign(sizes.begin() + pos, sizes.begin() + pos + len);
    pos += len;
  }
  return segs;
}

std::vector<WeightedAdjacency> group_segments(const Hypergraph& h, int q) {
  auto segs = segment_sizes(h, q);
  std::map<int, int> size_to_seg;
  for (int k = 0; k < q; ++k)
    for (int s : segs[k]) size_to_seg[s] = k;
  std::vector<std::vector<std::size_t>> members(q);
  for (std::size_t e = 0; e < h.hyperedges().size(); ++e)
    members[size_to_seg.at(static_cast<int>(h.hyperedges()[e].size()))].push_back(e);
  std::vector<WeightedAdjacency> out;
  out.reserve(q);
  for (int k = 0; k < q; ++k) out.push_back(pairs_of(h, members[k]));
  return out;
}

Hypergraph categorical_hypergraph(int n_rows,
                                  const std::vector<std::vector<std::string>>& columns) {
  std::vector<std::vector<int>> edges;
  for (const auto& col : columns) {
    if (static_cast<int>(col.size()) != n_rows)
      throw std::invalid_argument("categorical_hypergraph: column length does not match row count");
    std::map<std::string, std::vector<int>> groups;
    for (int r = 0; r < n_rows; ++r) groups[col[r]].push_back(r);
    for (auto& [value, rows] : groups)
      if (rows.size() >= 2) edges.push_back(std::move(rows));
  }
  return Hypergraph(n_rows, std::move(edges));
}

WeightedAdjacency clique_expand(const Hypergraph& h) {
  std::vector<std::size_t> all(h.hyperedges().size());
  for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
  return pairs_of(h, all);
}

}  // namespace hohl
