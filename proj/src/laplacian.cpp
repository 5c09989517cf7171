#include "hohl/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hohl {

GraphLaplacian GraphLaplacian::from_adjacency(const WeightedAdjacency& w, double scale) {
  GraphLaplacian l;
  int n = w.n_vertices();
  l.n_ = n;
  l.offsets_.assign(n + 1, 0);
  l.diag_ = Vector::Zero(n);
  std::size_t nnz = w.n_entries();
  l.cols_.reserve(nnz);
  l.vals_.reserve(nnz);
  for (int i = 0; i < n; ++i) {
    const int* c = w.row_cols(i);
    const double* v = w.row_vals(i);
    double deg = 0.0;
    for (int k = 0; k < w.row_size(i); ++k) {
      l.cols_.push_back(c[k]);
      l.vals_.push_back(-scale * v[k]);
      deg += v[k];
    }
    l.diag_[i] = scale * deg;
    l.offsets_[i + 1] = l.cols_.size();
  }
  return l;
}

GraphLaplacian GraphLaplacian::from_offdiag_triplets(
    int n, std::vector<std::pair<std::pair<int, int>, double>> triplets) {
  std::vector<std::pair<std::pair<int, int>, double>> dir;
  dir.reserve(triplets.size() * 2);
  for (const auto& [ij, v] : triplets) {
    auto [i, j] = ij;
    if (i == j) throw std::invalid_argument("laplacian: diagonal entry not allowed here");
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw std::out_of_range("laplacian: vertex index out of range");
    dir.push_back({{i, j}, v});
    dir.push_back({{j, i}, v});
  }
  // stable: mirrored duplicate groups accumulate in the same order, so
  // symmetry is exact in floating point
  std::stable_sort(dir.begin(), dir.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  GraphLaplacian l;
  l.n_ = n;
  l.offsets_.assign(n + 1, 0);
  l.diag_ = Vector::Zero(n);
  for (std::size_t k = 0; k < dir.size();) {
    std::size_t m = k + 1;
    while (m < dir.size() && dir[m].first == dir[k].first) ++m;
    double v = 0.0;
    for (std::size_t t = k; t < m; ++t) v += dir[t].second;
    int i = dir[k].first.first;
    l.cols_.push_back(dir[k].first.second);
    l.vals_.push_back(v);
    l.diag_[i] -= v;
    ++l.offsets_[i + 1];
    k = m;
  }
  for (int i = 0; i < n; ++i) l.offsets_[i + 1] += l.offsets_[i];
  return l;
}

void GraphLaplacian::apply(const Vector& v, Vector& out) const {
  if (v.size() != n_) throw std::invalid_argument("laplacian apply: dimension mismatch");
  out.resize(n_);
  for (int i = 0; i < n_; ++i) {
    double acc = diag_[i] * v[i];
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) acc += vals_[k] * v[cols_[k]];
    out[i] = acc;
  }
}

Matrix GraphLaplacian::dense() const {
  Matrix m = Matrix::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    m(i, i) = diag_[i];
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) m(i, cols_[k]) = vals_[k];
  }
  return m;
}

double GraphLaplacian::norm_bound() const {
  // Gershgorin: |lambda| <= max_i (|L_ii| + sum_j |L_ij|)
  double b = 0.0;
  for (int i = 0; i < n_; ++i) {
    double r = std::abs(diag_[i]);
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) r += std::abs(vals_[k]);
    b = std::max(b, r);
  }
  return b;
}

void GraphLaplacian::merge_components(UnionFind& uf) const {
  for (int i = 0; i < n_; ++i)
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k)
      if (vals_[k] != 0.0) uf.unite(i, cols_[k]);
}

double GraphLaplacian::offdiag_entry(int i, int j) const {
  if (i == j) return 0.0;
  const int* begin = cols_.data() + offsets_[i];
  const int* end = cols_.data() + offsets_[i + 1];
  const int* it = std::lower_bound(begin, end, j);
  if (it != end && *it == j) return vals_[offsets_[i] + (it - begin)];
  return 0.0;
}

Vector GraphLaplacian::diag_of_square() const {
  Vector d(n_);
  for (int i = 0; i < n_; ++i) {
    double s = diag_[i] * diag_[i];
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) s += vals_[k] * vals_[k];
    d[i] = s;
  }
  return d;
}

double GraphLaplacian::max_row_sum_residual() const {
  double r = 0.0;
  for (int i = 0; i < n_; ++i) {
    double s = diag_[i];
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) s += vals_[k];
    r = std::max(r, std::abs(s));
  }
  return r;
}

void GraphLaplacian::write_coo(std::ostream& out) const {
  out.precision(17);
  for (int i = 0; i < n_; ++i)
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k)
      if (i < cols_[k]) out << i << ' ' << cols_[k] << ' ' << vals_[k] << '\n';
}

GraphLaplacian GraphLaplacian::read_coo(std::istream& in, int n) {
  std::vector<std::pair<std::pair<int, int>, double>> trip;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ss(line);
    int i, j;
    double v;
    if (!(ss >> i >> j >> v))
      throw std::runtime_error("laplacian coo line " + std::to_string(lineno) + ": expected `i j value`");
    trip.push_back({{i, j}, v});
  }
  return from_offdiag_triplets(n, std::move(trip));
}

CliqueSumLaplacian::CliqueSumLaplacian(int n, const std::vector<std::vector<int>>& hyperedges,
                                       const std::vector<double>& weights, double scale)
    : n_(n) {
  if (hyperedges.size() != weights.size())
    throw std::invalid_argument("clique-sum: weight count mismatch");
  pin_offsets_.push_back(0);
  diag_ = Vector::Zero(n);
  for (std::size_t e = 0; e < hyperedges.size(); ++e) {
    const auto& verts = hyperedges[e];
    if (verts.size() < 2) throw std::invalid_argument("clique-sum: hyperedge smaller than 2");
    double w = scale * weights[e];
    for (int i : verts) {
      if (i < 0 || i >= n) throw std::out_of_range("clique-sum: vertex index out of range");
      pins_.push_back(i);
      diag_[i] += w * (static_cast<double>(verts.size()) - 1.0);
    }
    scaled_weights_.push_back(w);
    pin_offsets_.push_back(pins_.size());
  }
}

void CliqueSumLaplacian::apply(const Vector& v, Vector& out) const {
  if (v.size() != n_) throw std::invalid_argument("laplacian apply: dimension mismatch");
  out.resize(n_);
  for (int i = 0; i < n_; ++i) out[i] = diag_[i] * v[i];
  for (std::size_t e = 0; e + 1 < pin_offsets_.size(); ++e) {
    double sum = 0.0;
    for (std::size_t k = pin_offsets_[e]; k < pin_offsets_[e + 1]; ++k) sum += v[pins_[k]];
    double w = scaled_weights_[e];
    for (std::size_t k = pin_offsets_[e]; k < pin_offsets_[e + 1]; ++k) {
      int i = pins_[k];
      // subtract the full clique row: -w * (sum - v_i); the (s-1) v_i part
      // is already in the degree diagonal
      out[i] -= w * (sum - v[i]);
    }
  }
}

Matrix CliqueSumLaplacian::dense() const {
  Matrix m = Matrix::Zero(n_, n_);
  for (std::size_t e = 0; e + 1 < pin_offsets_.size(); ++e) {
    double w = scaled_weights_[e];
    for (std::size_t a = pin_offsets_[e]; a < pin_offsets_[e + 1]; ++a)
      for (std::size_t b = pin_offsets_[e]; b < pin_offsets_[e + 1]; ++b) {
        if (pins_[a] == pins_[b]) continue;
        m(pins_[a], pins_[b]) -= w;
        }
  }
  for (int i = 0; i < n_; ++i) m(i, i) = diag_[i];
  return m;
}

double CliqueSumLaplacian::norm_bound() const {
  // ordinary nonnegative graph: lambda_max <= 2 max degree
  return diag_.size() == 0 ? 0.0 : 2.0 * diag_.maxCoeff();
}

void CliqueSumLaplacian::merge_components(UnionFind& uf) const {
  for (std::size_t e = 0; e + 1 < pin_offsets_.size(); ++e)
    for (std::size_t k = pin_offsets_[e] + 1; k < pin_offsets_[e + 1]; ++k)
      uf.unite(pins_[pin_offsets_[e]], pins_[k]);
}

}  // namespace hohl
