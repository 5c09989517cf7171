#include "hohl/multiscale.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hohl {

MultiscaleOperator::MultiscaleOperator(std::vector<ScaleTerm> terms,
                                       std::vector<double> scales)
    : terms_(std::move(terms)), scales_(std::move(scales)) {
  if (terms_.empty()) throw std::invalid_argument("multiscale operator: no terms");
  n_ = terms_.front().laplacian->size();
  int prev_power = 0;
  bool strictly_increasing = true;
  for (const auto& t : terms_) {
    if (!t.laplacian) throw std::invalid_argument("multiscale operator: null term");
    if (t.laplacian->size() != n_)
      throw std::invalid_argument("multiscale operator: terms disagree on n");
    if (t.coeff <= 0.0) throw std::invalid_argument("multiscale operator: coefficient must be > 0");
    if (t.power < 1) throw std::invalid_argument("multiscale operator: power must be a positive integer");
    if (t.power < prev_power)
      throw std::invalid_argument("multiscale operator: powers must be nondecreasing");
    if (t.power == prev_power) strictly_increasing = false;
    prev_power = t.power;
  }
  (void)strictly_increasing;  // nondecreasing accepted; strictness not enforced
}

void MultiscaleOperator::apply(const Vector& v, Vector& out) const {
  if (v.size() != n_) throw std::invalid_argument("multiscale apply: dimension mismatch");
  out = Vector::Zero(n_);
  Vector a(n_), b(n_);
  for (const auto& t : terms_) {
    t.laplacian->apply(v, a);
    for (int p = 1; p < t.power; ++p) {
      t.laplacian->apply(a, b);
      a.swap(b);
    }
    out.noalias() += t.coeff * a;
  }
}

Vector MultiscaleOperator::apply(const Vector& v) const {
  Vector out;
  apply(v, out);
  return out;
}

double MultiscaleOperator::quadratic_form(const Vector& v) const {
  if (v.size() != n_) throw std::invalid_argument("quadratic form: dimension mismatch");
  double total = 0.0;
  Vector a(n_), b(n_);
  for (const auto& t : terms_) {
    int half = t.power / 2;
    a = v;
    for (int p = 0; p < half; ++p) {
      t.laplacian->apply(a, b);
      a.swap(b);
    }
    if (t.power % 2 == 0) {
      total += t.coeff * a.squaredNorm();  // v.L^{2m}v = |L^m v|^2
    } else {
      t.laplacian->apply(a, b);
      total += t.coeff * a.dot(b);  // v.L^{2m+1}v = (L^m v).L(L^m v)
    }
  }
  if (total < 0.0) {
    if (total < -1e-12 * std::max(1.0, v.squaredNorm()) * norm_bound())
      return total;  // genuinely negative: surface it, do not mask
    total = 0.0;
  }
  return total;
}

double MultiscaleOperator::norm_bound() const {
  double b = 0.0;
  for (const auto& t : terms_)
    b += t.coeff * std::pow(t.laplacian->norm_bound(), t.power);
  return b;
}

Vector MultiscaleOperator::diagonal_estimate() const {
  Vector d = Vector::Zero(n_);
  for (const auto& t : terms_) {
    const Vector& ld = t.laplacian->diagonal();
    const auto* g = dynamic_cast<const GraphLaplacian*>(t.laplacian.get());
    if (t.power == 1) {
      d += t.coeff * ld;
    } else if (t.power == 2 && g != nullptr) {
      d += t.coeff * g->diag_of_square();
    } else {
      // elementwise estimate; any positive diagonal is a valid preconditioner
      d += t.coeff * ld.array().pow(t.power).matrix();
    }
  }
  return d;
}

std::vector<int> MultiscaleOperator::component_labels() const {
  UnionFind uf(n_);
  for (const auto& t : terms_) t.laplacian->merge_components(uf);
  std::vector<int> label(n_, -1);
  int next = 0;
  for (int i = 0; i < n_; ++i) {
    int r = uf.find(i);
    if (label[r] < 0) label[r] = next++;
    label[i] = label[r];
  }
  return label;
}

GraphLaplacian MultiscaleOperator::materialize(std::size_t max_entries) const {
  std::size_t needed = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  if (needed > max_entries)
    throw std::runtime_error("materialize: n^2 = " + std::to_string(needed) +
                             " exceeds the entry budget " + std::to_string(max_entries));
  Matrix acc = Matrix::Zero(n_, n_);
  for (const auto& t : terms_) {
    Matrix base = t.laplacian->dense();
    Matrix pw = base;
    for (int p = 1; p < t.power; ++p) pw = (pw * base).eval();
    acc.noalias() += t.coeff * pw;
  }
  std::vector<std::pair<std::pair<int, int>, double>> trip;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (acc(i, j) != 0.0) trip.push_back({{i, j}, 0.5 * (acc(i, j) + acc(j, i))});
  return GraphLaplacian::from_offdiag_triplets(n_, std::move(trip));
}

std::vector<std::pair<double, double>> shared_basis_eigencheck(
    const GraphLaplacian& l, const std::vector<double>& coeffs,
    const std::vector<int>& powers) {
  if (coeffs.size() != powers.size())
    throw std::invalid_argument("eigencheck: coeff/power count mismatch");
  if (l.size() > 500) throw std::invalid_argument("eigencheck: n must be <= 500");
  Eigen::SelfAdjointEigenSolver<Matrix> es(l.dense());
  const Vector& a = es.eigenvalues();

  std::vector<double> expected(l.size());
  for (int i = 0; i < l.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      s += coeffs[k] * std::pow(a[i], powers[k]);
    expected[i] = s;
  }
  std::sort(expected.begin(), expected.end());

  auto shared = std::make_shared<GraphLaplacian>(l);
  std::vector<ScaleTerm> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    terms.push_back({shared, coeffs[k], powers[k]});
  std::sort(terms.begin(), terms.end(),
            [](const ScaleTerm& x, const ScaleTerm& y) { return x.power < y.power; });
  MultiscaleOperator op(std::move(terms));
  Eigen::SelfAdjointEigenSolver<Matrix> es2(op.materialize().dense());

  std::vector<std::pair<double, double>> out(l.size());
  for (int i = 0; i < l.size(); ++i) out[i] = {expected[i], es2.eigenvalues()[i]};
  return out;
}

}  // namespace hohl
