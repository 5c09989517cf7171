#include "hohl/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hohl/rng.hpp"

namespace hohl {

Vector SpectralBasis::coefficients(const Vector& v) const {
  if (v.size() != n) throw std::invalid_argument("spectral basis: dimension mismatch");
  return (eigenvectors.transpose() * v) / static_cast<double>(n);
}

void SpectralBasis::write(std::ostream& out) const {
  out.precision(17);
  out << "index,eigenvalue\n";
  for (int i = 0; i < T; ++i) out << i + 1 << ',' << eigenvalues[i] << '\n';
  out << "# eigenvectors, one per line, empirical normalization\n";
  for (int i = 0; i < T; ++i) {
    for (int r = 0; r < n; ++r) {
      if (r) out << ' ';
      out << eigenvectors(r, i);
    }
    out << '\n';
  }
}

namespace {

struct RitzPair {
  double value;
  Vector vector;  // Euclidean-normalized
};

// one Lanczos sweep on the orthogonal complement of `locked`
std::vector<RitzPair> lanczos_sweep(const MultiscaleOperator& op,
                                    const std::vector<Vector>& locked, Vector start,
                                    int m_target) {
  const int n = op.size();
  std::vector<Vector> basis;
  std::vector<double> alpha, beta;

  auto reorthogonalize = [&](Vector& w) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& u : locked) w -= u.dot(w) * u;
      for (const Vector& u : basis) w -= u.dot(w) * u;
    }
  };

  reorthogonalize(start);
  double nrm = start.norm();
  if (nrm < 1e-13) return {};
  basis.push_back(start / nrm);

  Vector w(n);
  for (int j = 0; j < m_target; ++j) {
    op.apply(basis[j], w);
    double a = basis[j].dot(w);
    alpha.push_back(a);
    w -= a * basis[j];
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    reorthogonalize(w);
    double b = w.norm();
    if (j + 1 >= m_target || static_cast<int>(locked.size() + basis.size()) >= n ||
        b < 1e-12 * std::max(1.0, op.norm_bound())) {
      break;  // invariant subspace or budget reached
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }

  const int m = static_cast<int>(basis.size());
  Vector diag(m), sub(std::max(m - 1, 0));
  for (int i = 0; i < m; ++i) diag[i] = alpha[i];
  for (int i = 0; i + 1 < m; ++i) sub[i] = beta[i];
  Eigen::SelfAdjointEigenSolver<Matrix> tri;
  tri.computeFromTridiagonal(diag, sub);

  std::vector<RitzPair> out;
  out.reserve(m);
  for (int i = 0; i < m; ++i) {
    Vector y = Vector::Zero(n);
    for (int j = 0; j < m; ++j) y += tri.eigenvectors()(j, i) * basis[j];
    y.normalize();
    out.push_back({tri.eigenvalues()[i], std::move(y)});
  }
  return out;
}

}  // namespace

SpectralBasis smallest_eigenpairs(const MultiscaleOperator& op, int T, double tol,
                                  std::uint64_t seed) {
  const int n = op.size();
  if (T < 1 || T > n) throw std::invalid_argument("smallest_eigenpairs: need 1 <= T <= n");
  if (tol <= 0.0) throw std::invalid_argument("smallest_eigenpairs: tol must be > 0");

  Rng rng(seed);
  std::vector<Vector> locked;
  std::vector<double> values;
  const int max_restarts = 80;
  int stagnant = 0;
  bool confirmed = false;
  Vector resid(n);

  auto value_ref = [&]() {
    // estimate of beta_T for the residual threshold
    if (values.empty()) return 1.0;
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    int idx = std::min<int>(T, static_cast<int>(sorted.size())) - 1;
    return std::max(sorted[idx], 1.0);
  };

  for (int restart = 0; restart < max_restarts; ++restart) {
    if (static_cast<int>(locked.size()) >= n) break;
    int remaining = T - static_cast<int>(locked.size());
    int m_target = std::min(n - static_cast<int>(locked.size()),
                            std::max(2 * std::max(remaining, 1) + 20 + 10 * stagnant, 40));
    Vector start(n);
    for (int i = 0; i < n; ++i) start[i] = rng.normal();
    auto ritz = lanczos_sweep(op, locked, std::move(start), m_target);
    if (ritz.empty()) {
      ++stagnant;
      continue;
    }

    const double thr = tol * value_ref();
    int certified = 0;
    double smallest_certified = std::numeric_limits<double>::infinity();
    int inspect = std::min<int>(static_cast<int>(ritz.size()), std::max(remaining, 1) + 5);
    for (int i = 0; i < inspect; ++i) {
      op.apply(ritz[i].vector, resid);
      resid -= ritz[i].value * ritz[i].vector;
      if (resid.norm() <= thr) {
        locked.push_back(std::move(ritz[i].vector));
        values.push_back(ritz[i].value);
        smallest_certified = std::min(smallest_certified, ritz[i].value);
        ++certified;
      }
    }
    stagnant = certified == 0 ? stagnant + 1 : 0;
    (void)smallest_certified;

    if (static_cast<int>(locked.size()) >= T) {
      if (static_cast<int>(locked.size()) >= n) {
        confirmed = true;
        break;
      }
      // a fresh deflated sweep must not certify anything below our T-th
      // value, otherwise a copy of a multiple eigenvalue is still missing
      std::vector<double> sorted(values);
      std::sort(sorted.begin(), sorted.end());
      const double vT = sorted[T - 1];
      Vector probe(n);
      for (int i = 0; i < n; ++i) probe[i] = rng.normal();
      auto check = lanczos_sweep(op, locked, std::move(probe),
                                 std::min(n - static_cast<int>(locked.size()), 40));
      bool found_smaller = false;
      for (const auto& rp : check) {
        if (rp.value >= vT - thr) continue;
        op.apply(rp.vector, resid);
        resid -= rp.value * rp.vector;
        if (resid.norm() <= thr) {
          locked.push_back(rp.vector);
          values.push_back(rp.value);
          found_smaller = true;
        }
      }
      if (!found_smaller) {
        confirmed = true;
        break;
      }
    }
  }

  if (!confirmed && static_cast<int>(locked.size()) < T)
    throw EigensolveError("smallest_eigenpairs: only " + std::to_string(locked.size()) +
                              " of " + std::to_string(T) + " pairs converged within the restart cap",
                          static_cast<int>(locked.size()));

  // sort ascending and retain the T smallest
  std::vector<int> order(locked.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });

  SpectralBasis basis;
  basis.n = n;
  basis.T = T;
  basis.eigenvalues.resize(T);
  basis.eigenvectors.resize(n, T);
  double top = std::max(values[order[T - 1]], 0.0);
  const double scale = std::sqrt(static_cast<double>(n));
  for (int i = 0; i < T; ++i) {
    double v = values[order[i]];
    if (v < -1e-10 * std::max(top, 1.0))
      throw EigensolveError("smallest_eigenpairs: negative eigenvalue " + std::to_string(v) +
                                " beyond rounding tolerance",
                            T);
    basis.eigenvalues[i] = std::max(v, 0.0);
    basis.eigenvectors.col(i) = scale * locked[order[i]];
  }
  return basis;
}

double truncated_energy(const SpectralBasis& basis, const Vector& v) {
  Vector c = basis.coefficients(v);
  double e = 0.0;
  for (int i = 0; i < basis.T; ++i) e += basis.eigenvalues[i] * c[i] * c[i];
  return e;
}

Vector truncated_solve(const SpectralBasis& basis, const LeastSquaresFidelity& fidelity,
                       double tau) {
  if (tau < 0.0) throw std::invalid_argument("truncated_solve: tau must be >= 0");
  Vector c = basis.coefficients(fidelity.target);
  for (int i = 0; i < basis.T; ++i) c[i] /= 1.0 + tau * basis.eigenvalues[i];
  return basis.eigenvectors * c;
}

}  // namespace hohl
