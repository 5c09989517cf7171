#ifndef HOHL_MULTISCALE_HPP
#define HOHL_MULTISCALE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hohl/laplacian.hpp"

namespace hohl {

// One term lambda * L^p of the multiscale operator.
struct ScaleTerm {
  LaplacianPtr laplacian;
  double coeff = 1.0;  // lambda_k > 0
  int power = 1;       // p_k >= 1
};

// The multiscale operator sum_k lambda_k L_k^{p_k}, applied matrix-free:
// powers are realized by repeated matrix-vector products and are never
// materialized except through materialize().
class MultiscaleOperator {
 public:
  explicit MultiscaleOperator(std::vector<ScaleTerm> terms,
                              std::vector<double> scales = {});

  int size() const { return n_; }
  const std::vector<ScaleTerm>& terms() const { return terms_; }
  // provenance: the epsilon- or k-ladder the terms were built from, if any
  const std::vector<double>& scales() const { return scales_; }

  void apply(const Vector& v, Vector& out) const;
  Vector apply(const Vector& v) const;

  // v . (op v), with even powers evaluated as squared norms so rounding
  // cannot push the result negative by more than ~1e-12; clamped at 0
  double quadratic_form(const Vector& v) const;

  // Gershgorin-style upper bound on the spectral norm
  double norm_bound() const;

  // diagonal estimate for Jacobi-type preconditioning: exact for powers
  // <= 2 on explicit Laplacians, elementwise power estimate otherwise
  Vector diagonal_estimate() const;

  // union of the terms' supports; vertices in the same component share
  // every term's kernel structure
  std::vector<int> component_labels() const;

  // Explicit matrix sum_k lambda_k L_k^{p_k} as a (possibly signed)
  // Laplacian. Refuses when n^2 exceeds max_entries.
  GraphLaplacian materialize(std::size_t max_entries = 25'000'000) const;

 private:
  int n_ = 0;
  std::vector<ScaleTerm> terms_;
  std::vector<double> scales_;
};

// Discrete shared-eigenbasis check: builds the operator whose terms all use
// the one Laplacian `l`, and pairs the combined analytic eigenvalues
// sum_k lambda_k a_i^{p_k} (a_i the eigenvalues of l) with the actual
// eigenvalues of the materialized operator, both sorted ascending.
std::vector<std::pair<double, double>> shared_basis_eigencheck(
    const GraphLaplacian& l, const std::vector<double>& coeffs,
    const std::vector<int>& powers);

}  // namespace hohl

#endif
