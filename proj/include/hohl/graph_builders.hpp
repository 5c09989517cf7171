#ifndef HOHL_GRAPH_BUILDERS_HPP
#define HOHL_GRAPH_BUILDERS_HPP

#include <iosfwd>
#include <string>

#include "hohl/laplacian.hpp"

namespace hohl {

enum class Metric { euclidean, torus, cosine };

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

// n x d feature matrix plus the metric the builders should use. The torus
// metric is coordinatewise wraparound on the unit torus and requires all
// coordinates in [0, 1).
struct PointCloud {
  Matrix points;
  Metric metric = Metric::euclidean;

  int n() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }

  double distance(int i, int j) const;
  void validate() const;

  static PointCloud read_csv(std::istream& in, Metric metric);
  void write_csv(std::ostream& out) const;
};

enum class KernelProfile {
  indicator,       // eta(t) = 1 for t <= 1, else 0
  smooth_compact,  // eta(t) = exp(-1/(1-t^2)) for t < 1, else 0
};

// Compactly supported radial kernel together with its normalizing constant
// sigma_eta = (1/d) int eta(|h|)|h|^2 dh.
struct Kernel {
  KernelProfile profile = KernelProfile::indicator;
  double sigma = 0.0;

  double eval(double t) const;

  static Kernel make(KernelProfile profile, int dim);
};

// sigma_eta for the given profile and dimension. Indicator uses the closed
// form Vol(S^{d-1}) / (d (d+2)); the smooth profile is integrated by
// adaptive radial quadrature to relative error <= 1e-10.
double sigma_eta(KernelProfile profile, int dim);

// w_ij = eta(dist(x_i, x_j) / eps), diagonal excluded. A fully
// disconnected result is allowed.
WeightedAdjacency epsilon_graph(const PointCloud& pc, double eps, const Kernel& kernel);

// Self-tuning weights w_ij = exp(-4 dist(x_i,x_j)^2 / d_k(x_i)^2) over each
// point's k nearest neighbors, symmetrized by max(w_ij, w_ji).
WeightedAdjacency knn_selftuning_graph(const PointCloud& pc, int k);

// L = c (D - W) with c = 2 / (sigma * n * eps^{d+2}).
GraphLaplacian rescaled_laplacian(const WeightedAdjacency& w, int n, double eps, int dim,
                                  double sigma);

}  // namespace hohl

#endif
