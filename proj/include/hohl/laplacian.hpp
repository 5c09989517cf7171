#ifndef HOHL_LAPLACIAN_HPP
#define HOHL_LAPLACIAN_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <memory>
#include <vector>

#include "hohl/hypergraph.hpp"

namespace hohl {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[a] = b;
  }

 private:
  std::vector<int> parent_;
};

// Symmetric operator with zero row sums. Implementations provide the
// matrix-vector product; everything downstream (powers, CG, Lanczos) is
// built on apply().
class Laplacian {
 public:
  virtual ~Laplacian() = default;
  virtual int size() const = 0;
  virtual void apply(const Vector& v, Vector& out) const = 0;
  virtual const Vector& diagonal() const = 0;
  virtual Matrix dense() const = 0;
  // upper bound on the spectral norm
  virtual double norm_bound() const = 0;
  // merge vertices connected by this operator's support
  virtual void merge_components(UnionFind& uf) const = 0;

  Vector apply(const Vector& v) const {
    Vector out(size());
    apply(v, out);
    return out;
  }
};

// Explicit sparse Laplacian: CSR off-diagonal entries (the matrix entries
// L_ij themselves, nonpositive for ordinary graphs, any sign for signed
// graphs) plus the diagonal. diag[i] = -sum_j offdiag(i,j) by construction.
class GraphLaplacian final : public Laplacian {
 public:
  GraphLaplacian() = default;

  // L = scale * (D - W)
  static GraphLaplacian from_adjacency(const WeightedAdjacency& w, double scale = 1.0);

  // signed off-diagonal entries (i, j, L_ij), i < j; diagonal reconstructed
  // from the zero-row-sum identity
  static GraphLaplacian from_offdiag_triplets(
      int n, std::vector<std::pair<std::pair<int, int>, double>> triplets);

  int size() const override { return n_; }
  using Laplacian::apply;
  void apply(const Vector& v, Vector& out) const override;
  const Vector& diagonal() const override { return diag_; }
  Matrix dense() const override;
  double norm_bound() const override;
  void merge_components(UnionFind& uf) const override;

  std::size_t n_offdiag_entries() const { return cols_.size(); }
  double offdiag_entry(int i, int j) const;
  double max_row_sum_residual() const;  // max_i |diag_i + sum_j offdiag_ij|
  Vector diag_of_square() const;        // diag(L^2), exact: sum_j L_ij^2

  // coordinate-format text: `i j value` per off-diagonal entry (i < j)
  void write_coo(std::ostream& out) const;
  static GraphLaplacian read_coo(std::istream& in, int n);

 private:
  int n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<int> cols_;
  std::vector<double> vals_;  // L_ij for i != j
  Vector diag_;
};

// Laplacian of a union of hyperedge cliques, kept in factored form:
//   L v = sum_e w_e (|e| * v|_e - (sum_{i in e} v_i) * 1_e).
// Exactly the Laplacian of the clique expansion of the given hyperedges;
// apply costs O(total pins) regardless of how dense the expansion is.
class CliqueSumLaplacian final : public Laplacian {
 public:
  CliqueSumLaplacian(int n, const std::vector<std::vector<int>>& hyperedges,
                     const std::vector<double>& weights, double scale = 1.0);

  int size() const override { return n_; }
  using Laplacian::apply;
  void apply(const Vector& v, Vector& out) const override;
  const Vector& diagonal() const override { return diag_; }
  Matrix dense() const override;
  double norm_bound() const override;
  void merge_components(UnionFind& uf) const override;

 private:
  int n_ = 0;
  std::vector<std::size_t> pin_offsets_;
  std::vector<int> pins_;
  std::vector<double> scaled_weights_;
  Vector diag_;
};

using LaplacianPtr = std::shared_ptr<const Laplacian>;

}  // namespace hohl

#endif
