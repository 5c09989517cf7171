#ifndef HOHL_LEARNING_HPP
#define HOHL_LEARNING_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hohl/graph_builders.hpp"
#include "hohl/multiscale.hpp"

namespace hohl {

// Partial labeling of n vertices; -1 marks unlabeled. ground_truth is used
// for evaluation only and never reaches the solvers.
struct LabeledDataset {
  int n = 0;
  std::vector<int> labels;
  int n_classes = 0;
  std::vector<int> ground_truth;

  void validate(bool require_labeled) const;
  int labeled_count() const;
};

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual(residual), iterations(iterations) {}
  double residual;
  int iterations;
};

struct CgReport {
  int iterations = 0;
  double relative_residual = 0.0;
};

// Minimizer of (1/n)|v - y|^2 + tau <v, op v>_{L2(mu_n)}, i.e. the solution
// of (Id + tau op) u = y, by Jacobi-preconditioned conjugate gradients.
// max_iter = 0 means the default cap of 10 n.
Vector supervised_solve(const MultiscaleOperator& op, const Vector& y, double tau,
                        double tol = 1e-8, int max_iter = 0, CgReport* report = nullptr);

struct SslOptions {
  double cg_tol = 1e-8;
  int max_iter = 0;  // 0 -> 10 n
};

struct SslResult {
  std::vector<int> predictions;   // full label map
  Matrix scores;                  // n x n_classes one-vs-all score vectors
  std::vector<uint8_t> fallback;  // 1 where the majority fallback applied
  int majority_class = 0;
};

// Hard-constraint (Laplace-learning style) classification: labeled vertices
// are clamped to class indicators and M_uu u_c = -M_ul 1_{labeled=c} is
// solved per class. Components with no labeled vertex fall back to the
// majority class of the labeled set.
SslResult ssl_classify(const GraphLaplacian& materialized, const LabeledDataset& data,
                       const SslOptions& opts = {});

// Same system solved matrix-free on the multiscale operator; used by the
// drivers when materialization would not fit the time or memory budget.
SslResult ssl_classify(const MultiscaleOperator& op, const LabeledDataset& data,
                       const SslOptions& opts = {}, const Matrix* warm_scores = nullptr);

struct ActiveLearnCurve {
  std::vector<double> accuracy;  // length = rounds + 1, entry 0 is the
                                 // accuracy of the initial labeled set
  std::vector<int> queried;      // vertex chosen at each round
  std::vector<int> initial_labeled;
  bool truncated = false;  // budget exceeded the pool size
};

// Uncertainty-sampling loop: each round solves the SSL problem, queries the
// unlabeled vertex with the smallest top-two score margin (ties to the
// lowest index), reveals its ground-truth label, and records accuracy on
// the remaining unlabeled vertices.
ActiveLearnCurve active_learn(const MultiscaleOperator& op, const LabeledDataset& data,
                              int budget, std::uint64_t seed, const SslOptions& opts = {});

struct RatesConfig {
  std::vector<int> n_values{500, 1000, 2000};
  int dim = 2;
  int trials = 10;
  double noise_sigma = 0.1;
  std::uint64_t seed = 42;
  std::vector<double> lambdas{1.0, 1.0};
  std::vector<int> powers{1, 2};
  // ladder: eps^(k) = ladder_constants[k] * (log n / n)^ladder_exponent,
  // constants strictly decreasing; exponent 0 means the default 1/(dim+4)
  std::vector<double> ladder_constants{0.6, 0.42};
  double ladder_exponent = 0.0;
  // tau = tau0 * n^tau_exponent
  double tau0 = 2e-4;
  double tau_exponent = -0.25;
  KernelProfile kernel = KernelProfile::indicator;
  std::string g_name = "wave";  // "wave" or "constant"
  double cg_tol = 1e-8;

  double ladder_exponent_or_default() const {
    return ladder_exponent > 0.0 ? ladder_exponent : 1.0 / (dim + 4.0);
  }
  std::vector<double> ladder_for(int n) const;
  double tau_for(int n) const;
};

struct RatesCell {
  int n = 0;
  int trial = 0;
  double error = 0.0;  // |u - g|_{L2(mu_n)}
  double tau = 0.0;
  std::vector<double> ladder;
};

struct RatesResult {
  std::vector<RatesCell> cells;
  std::vector<int> n_values;
  std::vector<double> median_error;  // parallel to n_values
};

double smooth_label_function(const std::string& g_name, const Eigen::RowVectorXd& x);

// Theorem-trend harness: for each n samples uniform torus points, builds the
// epsilon ladder, solves the supervised problem on noisy labels of a smooth
// g, and records the empirical L2 error per trial.
RatesResult rates_experiment(const RatesConfig& config);

}  // namespace hohl

#endif
