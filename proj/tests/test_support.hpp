#ifndef HOHL_TEST_SUPPORT_HPP
#define HOHL_TEST_SUPPORT_HPP

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "hohl/hypergraph.hpp"
#include "hohl/laplacian.hpp"
#include "hohl/multiscale.hpp"
#include "hohl/rng.hpp"

namespace hohl::test {

inline Matrix adjacency_dense(const WeightedAdjacency& w) {
  Matrix m = Matrix::Zero(w.n_vertices(), w.n_vertices());
  for (int i = 0; i < w.n_vertices(); ++i)
    for (int j = 0; j < w.n_vertices(); ++j) m(i, j) = w.entry(i, j);
  return m;
}

inline Hypergraph random_hypergraph(Rng& rng, int n, int n_edges, int min_size, int max_size) {
  std::vector<std::vector<int>> edges;
  std::vector<double> weights;
  for (int e = 0; e < n_edges; ++e) {
    int size = min_size + static_cast<int>(rng.uniform_below(max_size - min_size + 1));
    size = std::min(size, n);
    edges.push_back(rng.sample_without_replacement(n, size));
    weights.push_back(0.25 + rng.uniform());
  }
  return Hypergraph(n, std::move(edges), std::move(weights));
}

inline WeightedAdjacency random_adjacency(Rng& rng, int n, double edge_prob) {
  std::vector<std::pair<std::pair<int, int>, double>> trip;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < edge_prob) trip.push_back({{i, j}, 0.1 + rng.uniform()});
  return WeightedAdjacency::from_triplets(n, std::move(trip));
}

// random connected-ish graph Laplacian for operator tests
inline std::shared_ptr<GraphLaplacian> random_laplacian(Rng& rng, int n, double edge_prob) {
  return std::make_shared<GraphLaplacian>(
      GraphLaplacian::from_adjacency(random_adjacency(rng, n, edge_prob)));
}

inline Vector random_vector(Rng& rng, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

// dense reference for sum_k lambda_k L_k^{p_k}
inline Matrix dense_operator(const MultiscaleOperator& op) {
  Matrix acc = Matrix::Zero(op.size(), op.size());
  for (const auto& t : op.terms()) {
    Matrix base = t.laplacian->dense();
    Matrix pw = Matrix::Identity(op.size(), op.size());
    for (int p = 0; p < t.power; ++p) pw = (pw * base).eval();
    acc += t.coeff * pw;
  }
  return acc;
}

}  // namespace hohl::test

#endif
