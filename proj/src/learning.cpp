#include "hohl/learning.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "hohl/data_io.hpp"
#include "hohl/rng.hpp"

namespace hohl {

void LabeledDataset::validate(bool require_labeled) const {
  if (n < 1) throw std::invalid_argument("dataset: n must be >= 1");
  if (static_cast<int>(labels.size()) != n)
    throw std::invalid_argument("dataset: labels must have length n");
  if (n_classes < 1) throw std::invalid_argument("dataset: need n_classes >= 1");
  int count = 0;
  for (int l : labels) {
    if (l < -1 || l >= n_classes) throw std::invalid_argument("dataset: label out of range");
    if (l >= 0) ++count;
  }
  if (require_labeled && count == 0)
    throw std::invalid_argument("dataset: labeled set must be nonempty");
  if (!ground_truth.empty()) {
    if (static_cast<int>(ground_truth.size()) != n)
      throw std::invalid_argument("dataset: ground truth must have length n");
    for (int l : ground_truth)
      if (l < 0 || l >= n_classes)
        throw std::invalid_argument("dataset: ground-truth class out of range");
  }
}

int LabeledDataset::labeled_count() const {
  int c = 0;
  for (int l : labels)
    if (l >= 0) ++c;
  return c;
}

namespace {

using ApplyFn = std::function<void(const Vector&, Vector&)>;

CgReport pcg(const ApplyFn& apply, const Vector& b, Vector& x, const Vector& precond_diag,
             double tol, int max_iter) {
  const double bnorm = b.norm();
  CgReport rep;
  if (bnorm == 0.0) {
    x.setZero();
    rep.relative_residual = 0.0;
    return rep;
  }
  Vector r(b.size()), z(b.size()), p(b.size()), ap(b.size());
  apply(x, r);
  r = b - r;
  z = r.cwiseQuotient(precond_diag);
  p = z;
  double rz = r.dot(z);
  for (int it = 0; it < max_iter; ++it) {
    double rnorm = r.norm();
    rep.iterations = it;
    rep.relative_residual = rnorm / bnorm;
    if (rnorm <= tol * bnorm) return rep;
    apply(p, ap);
    double pap = p.dot(ap);
    if (pap <= 0.0) break;  // lost positive definiteness to rounding
    double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;
    z = r.cwiseQuotient(precond_diag);
    double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  rep.iterations = max_iter;
  rep.relative_residual = r.norm() / bnorm;
  return rep;
}

Vector positive_precond(Vector d) {
  for (int i = 0; i < d.size(); ++i)
    if (!(d[i] > 0.0)) d[i] = 1.0;
  return d;
}

}  // namespace

Vector supervised_solve(const MultiscaleOperator& op, const Vector& y, double tau,
                        double tol, int max_iter, CgReport* report) {
  const int n = op.size();
  if (y.size() != n) throw std::invalid_argument("supervised_solve: dimension mismatch");
  if (tau <= 0.0) throw std::invalid_argument("supervised_solve: tau must be > 0");
  if (max_iter <= 0) max_iter = 10 * n;

  ApplyFn apply = [&](const Vector& v, Vector& out) {
    op.apply(v, out);
    out = v + tau * out;
  };
  Vector precond = positive_precond(Vector::Ones(n) + tau * op.diagonal_estimate());
  Vector x = Vector::Zero(n);
  CgReport rep = pcg(apply, y, x, precond, tol, max_iter);
  if (report) *report = rep;
  if (rep.relative_residual > tol)
    throw SolveError("supervised_solve: CG cap of " + std::to_string(max_iter) +
                         " iterations reached with relative residual " +
                         std::to_string(rep.relative_residual),
                     rep.relative_residual, rep.iterations);
  return x;
}

namespace {

// Shared hard-constraint solver. apply_full acts on full n-vectors;
// component labels come from the operator's support structure.
SslResult ssl_solve_impl(int n, const ApplyFn& apply_full, const Vector& diag_estimate,
                         const std::vector<int>& component, const LabeledDataset& data,
                         const SslOptions& opts, const Matrix* warm_scores) {
  data.validate(true);
  if (data.n != n) throw std::invalid_argument("ssl: dataset size does not match operator");
  const int C = data.n_classes;

  // majority class of the labeled set (ties to the lowest class index)
  std::vector<int> class_counts(C, 0);
  for (int i = 0; i < n; ++i)
    if (data.labels[i] >= 0) ++class_counts[data.labels[i]];
  int majority = 0;
  for (int c = 1; c < C; ++c)
    if (class_counts[c] > class_counts[majority]) majority = c;

  // components reachable from a label
  int n_comp = 0;
  for (int i = 0; i < n; ++i) n_comp = std::max(n_comp, component[i] + 1);
  std::vector<uint8_t> comp_labeled(n_comp, 0);
  for (int i = 0; i < n; ++i)
    if (data.labels[i] >= 0) comp_labeled[component[i]] = 1;

  std::vector<int> sys;  // unlabeled vertices the linear system covers
  sys.reserve(n);
  std::vector<int> sys_index(n, -1);
  for (int i = 0; i < n; ++i)
    if (data.labels[i] < 0 && comp_labeled[component[i]]) {
      sys_index[i] = static_cast<int>(sys.size());
      sys.push_back(i);
    }

  SslResult result;
  result.majority_class = majority;
  result.scores = Matrix::Zero(n, C);
  result.predictions.assign(n, -1);
  result.fallback.assign(n, 0);

  const int ns = static_cast<int>(sys.size());
  int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * n;

  Vector full(n), out(n);
  auto apply_sys = [&](const Vector& z, Vector& res, double ridge) {
    full.setZero();
    for (int s = 0; s < ns; ++s) full[sys[s]] = z[s];
    apply_full(full, out);
    res.resize(ns);
    for (int s = 0; s < ns; ++s) res[s] = out[sys[s]] + ridge * z[s];
  };

  Vector precond(ns);
  for (int s = 0; s < ns; ++s) precond[s] = diag_estimate[sys[s]];
  precond = positive_precond(std::move(precond));

  const double trace_est = diag_estimate.sum();

  for (int c = 0; c < C; ++c) {
    // b = -(M x_c)|_sys with x_c the labeled-class-c indicator
    full.setZero();
    for (int i = 0; i < n; ++i)
      if (data.labels[i] == c) full[i] = 1.0;
    apply_full(full, out);
    Vector b(ns);
    for (int s = 0; s < ns; ++s) b[s] = -out[sys[s]];

    Vector z = Vector::Zero(ns);
    if (warm_scores && warm_scores->rows() == n && warm_scores->cols() == C)
      for (int s = 0; s < ns; ++s) z[s] = (*warm_scores)(sys[s], c);

    if (ns > 0) {
      ApplyFn asys = [&](const Vector& v, Vector& r) { apply_sys(v, r, 0.0); };
      CgReport rep = pcg(asys, b, z, precond, opts.cg_tol, max_iter);
      if (rep.relative_residual > opts.cg_tol) {
        // stalled: retry with a small ridge shift to absorb near-zero modes
        double ridge = 1e-8 * trace_est / std::max(n, 1);
        ApplyFn aridge = [&](const Vector& v, Vector& r) { apply_sys(v, r, ridge); };
        z.setZero();
        rep = pcg(aridge, b, z, precond, opts.cg_tol, max_iter);
        if (rep.relative_residual > opts.cg_tol)
          throw SolveError("ssl_classify: CG stalled for class " + std::to_string(c) +
                               " (relative residual " + std::to_string(rep.relative_residual) + ")",
                           rep.relative_residual, rep.iterations);
      }
    }

    for (int i = 0; i < n; ++i) {
      if (data.labels[i] >= 0)
        result.scores(i, c) = data.labels[i] == c ? 1.0 : 0.0;
      else if (sys_index[i] >= 0)
        result.scores(i, c) = z[sys_index[i]];
    }
  }

  for (int i = 0; i < n; ++i) {
    if (data.labels[i] >= 0) {
      result.predictions[i] = data.labels[i];
    } else if (sys_index[i] >= 0) {
      int best = 0;
      for (int c = 1; c < C; ++c)
        if (result.scores(i, c) > result.scores(i, best)) best = c;
      result.predictions[i] = best;
    } else {
      result.predictions[i] = majority;
      result.scores(i, majority) = 1.0;
      result.fallback[i] = 1;
    }
  }
  return result;
}

}  // namespace

SslResult ssl_classify(const GraphLaplacian& materialized, const LabeledDataset& data,
                       const SslOptions& opts) {
  const int n = materialized.size();
  UnionFind uf(n);
  materialized.merge_components(uf);
  std::vector<int> component(n);
  std::vector<int> remap(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (remap[r] < 0) remap[r] = next++;
    component[i] = remap[r];
  }
  ApplyFn apply = [&](const Vector& v, Vector& out) { materialized.apply(v, out); };
  return ssl_solve_impl(n, apply, materialized.diagonal(), component, data, opts, nullptr);
}

SslResult ssl_classify(const MultiscaleOperator& op, const LabeledDataset& data,
                       const SslOptions& opts, const Matrix* warm_scores) {
  ApplyFn apply = [&](const Vector& v, Vector& out) { op.apply(v, out); };
  return ssl_solve_impl(op.size(), apply, op.diagonal_estimate(), op.component_labels(), data,
                        opts, warm_scores);
}

ActiveLearnCurve active_learn(const MultiscaleOperator& op, const LabeledDataset& data,
                              int budget, std::uint64_t seed, const SslOptions& opts) {
  const int n = op.size();
  if (data.ground_truth.empty())
    throw std::invalid_argument("active_learn: ground truth required for queries and accuracy");
  LabeledDataset state = data;
  state.validate(false);
  if (state.n != n) throw std::invalid_argument("active_learn: dataset size mismatch");
  if (budget < 0) throw std::invalid_argument("active_learn: budget must be >= 0");

  Rng rng(seed);
  ActiveLearnCurve curve;

  if (state.labeled_count() == 0) {
    // default initialization: one uniformly random vertex per class
    for (int c = 0; c < state.n_classes; ++c) {
      std::vector<int> members;
      for (int i = 0; i < n; ++i)
        if (state.ground_truth[i] == c) members.push_back(i);
      if (members.empty())
        throw std::invalid_argument("active_learn: class " + std::to_string(c) +
                                    " absent from ground truth");
      int pick = members[rng.uniform_below(members.size())];
      state.labels[pick] = c;
      curve.initial_labeled.push_back(pick);
    }
  } else {
    for (int i = 0; i < n; ++i)
      if (state.labels[i] >= 0) curve.initial_labeled.push_back(i);
  }

  int pool = n - state.labeled_count();
  if (budget > pool) {
    budget = pool;
    curve.truncated = true;
  }

  auto accuracy_on_unlabeled = [&](const SslResult& r) {
    int total = 0, correct = 0;
    for (int i = 0; i < n; ++i) {
      if (state.labels[i] >= 0) continue;
      ++total;
      if (r.predictions[i] == state.ground_truth[i]) ++correct;
    }
    return total == 0 ? 1.0 : static_cast<double>(correct) / total;
  };

  SslResult current = ssl_classify(op, state, opts, nullptr);
  curve.accuracy.push_back(accuracy_on_unlabeled(current));

  for (int round = 0; round < budget; ++round) {
    // smallest top-two margin = largest acquisition score, ties to lowest index
    int query = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (state.labels[i] >= 0) continue;
      double top1 = -std::numeric_limits<double>::infinity(), top2 = top1;
      for (int c = 0; c < state.n_classes; ++c) {
        double s = current.scores(i, c);
        if (s > top1) {
          top2 = top1;
          top1 = s;
        } else if (s > top2) {
          top2 = s;
        }
      }
      double acq = 1.0 - (top1 - top2);
      if (acq > best) {
        best = acq;
        query = i;
      }
    }
    state.labels[query] = state.ground_truth[query];
    curve.queried.push_back(query);
    current = ssl_classify(op, state, opts, &current.scores);
    curve.accuracy.push_back(accuracy_on_unlabeled(current));
  }
  return curve;
}

std::vector<double> RatesConfig::ladder_for(int n) const {
  double expo = ladder_exponent_or_default();
  double base = std::pow(std::log(static_cast<double>(n)) / n, expo);
  std::vector<double> eps;
  for (double c : ladder_constants) eps.push_back(c * base);
  for (std::size_t k = 0; k + 1 < eps.size(); ++k)
    if (eps[k] <= eps[k + 1])
      throw std::invalid_argument("rates: ladder constants must be strictly decreasing");
  return eps;
}

double RatesConfig::tau_for(int n) const {
  return tau0 * std::pow(static_cast<double>(n), tau_exponent);
}

double smooth_label_function(const std::string& g_name, const Eigen::RowVectorXd& x) {
  if (g_name == "constant") return 1.0;
  if (g_name == "wave") {
    double v = std::sin(2.0 * std::numbers::pi * x[0]);
    if (x.size() >= 2) v *= std::cos(2.0 * std::numbers::pi * x[1]);
    return v;
  }
  throw std::invalid_argument("rates: unknown label function '" + g_name + "'");
}

RatesResult rates_experiment(const RatesConfig& config) {
  if (config.lambdas.size() != config.powers.size() ||
      config.lambdas.size() != config.ladder_constants.size())
    throw std::invalid_argument("rates: lambdas, powers, ladder constants must align");
  if (config.trials < 1) throw std::invalid_argument("rates: trials must be >= 1");

  RatesResult result;
  result.n_values = config.n_values;
  Kernel kernel = Kernel::make(config.kernel, config.dim);

  for (int n : config.n_values) {
    std::vector<double> errors;
    std::vector<double> ladder = config.ladder_for(n);
    double tau = config.tau_for(n);
    for (int trial = 0; trial < config.trials; ++trial) {
      std::uint64_t s = Rng::derive(config.seed, "rates:n=" + std::to_string(n), trial);
      SyntheticSpec spec;
      spec.kind = SyntheticKind::torus_uniform;
      spec.n = n;
      spec.dim = config.dim;
      spec.seed = s;
      PointCloud cloud = sample_synthetic(spec).cloud;

      std::vector<ScaleTerm> terms;
      for (std::size_t k = 0; k < ladder.size(); ++k) {
        WeightedAdjacency w = epsilon_graph(cloud, ladder[k], kernel);
        auto lap = std::make_shared<GraphLaplacian>(
            rescaled_laplacian(w, n, ladder[k], config.dim, kernel.sigma));
        terms.push_back({lap, config.lambdas[k], config.powers[k]});
      }
      MultiscaleOperator op(std::move(terms), ladder);

      Rng noise(Rng::splitmix(s ^ 0x9E37ULL));
      Vector g(n), y(n);
      for (int i = 0; i < n; ++i) {
        g[i] = smooth_label_function(config.g_name, cloud.points.row(i));
        y[i] = g[i] + config.noise_sigma * noise.normal();
      }
      Vector u = supervised_solve(op, y, tau, config.cg_tol);
      double err = std::sqrt((u - g).squaredNorm() / n);
      errors.push_back(err);
      result.cells.push_back({n, trial, err, tau, ladder});
    }
    std::vector<double> sorted(errors);
    std::sort(sorted.begin(), sorted.end());
    double median = sorted.size() % 2 == 1
                        ? sorted[sorted.size() / 2]
                        : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
    result.median_error.push_back(median);
  }
  return result;
}

}  // namespace hohl
