#ifndef HOHL_SPECTRAL_HPP
#define HOHL_SPECTRAL_HPP

#include <iosfwd>
#include <stdexcept>

#include "hohl/multiscale.hpp"

namespace hohl {

// The T smallest eigenpairs of a multiscale operator. Eigenvectors are
// orthonormal under the empirical inner product <u,v> = (1/n) sum u_i v_i,
// i.e. columns have Euclidean norm sqrt(n).
struct SpectralBasis {
  int n = 0;
  int T = 0;
  Vector eigenvalues;   // nondecreasing, clamped at 0
  Matrix eigenvectors;  // n x T

  // <v, psi_i>_{L2(mu_n)} for all retained pairs
  Vector coefficients(const Vector& v) const;

  // CSV with header `index,eigenvalue`, then the eigenvector matrix as
  // plain text, one eigenvector per line group
  void write(std::ostream& out) const;
};

class EigensolveError : public std::runtime_error {
 public:
  EigensolveError(const std::string& what, int converged)
      : std::runtime_error(what), converged_pairs(converged) {}
  int converged_pairs;
};

// Lanczos iteration with full reorthogonalization on the matrix-free
// apply, restarted with deflation until T pairs satisfy
// |op psi - beta psi| <= tol * max(beta_T, 1). Deflated restarts recover
// eigenvalue multiplicities that a single Krylov sequence cannot see.
SpectralBasis smallest_eigenpairs(const MultiscaleOperator& op, int T, double tol = 1e-9,
                                  std::uint64_t seed = 0x5eed);

// Truncated HOHL energy sum_{i<=T} beta_i <v, psi_i>^2 under the empirical
// inner product.
double truncated_energy(const SpectralBasis& basis, const Vector& v);

// Least-squares data fidelity Psi(v) = |v - y|^2_{L2(mu_n)}.
struct LeastSquaresFidelity {
  Vector target;
};

// Minimizer of tau * sum_{i<=T} beta_i c_i^2 + |v - y|^2_{L2(mu_n)} over
// span{psi_1..psi_T}: c_i = <y, psi_i> / (1 + tau beta_i). With tau = 1
// this is the truncated variational problem verbatim.
Vector truncated_solve(const SpectralBasis& basis, const LeastSquaresFidelity& fidelity,
                       double tau = 1.0);

}  // namespace hohl

#endif
