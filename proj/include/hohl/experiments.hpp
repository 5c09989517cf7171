#ifndef HOHL_EXPERIMENTS_HPP
#define HOHL_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hohl/data_io.hpp"
#include "hohl/learning.hpp"
#include "hohl/spectral.hpp"

namespace hohl {

// ---- method naming ---------------------------------------------------------

struct MethodSpec {
  enum class Kind { hohl, clique_laplace, laplace_knn, hohl_knn };
  Kind kind = Kind::hohl;
  int q = 1;
  bool quick_coeffs = false;  // RC: lambda_l = l, QC: lambda_l = l^2

  // names: hohl-q<N>[-rc|-qc], clique, laplace-knn, hohl-knn
  static MethodSpec parse(const std::string& name);
  std::string name() const;

  double lambda(int level) const {
    return quick_coeffs ? static_cast<double>(level) * level : static_cast<double>(level);
  }
};

// HOHL operator for a categorical hypergraph per the size-segmented
// construction; every term is a factored clique-sum Laplacian.
MultiscaleOperator hohl_operator(const Hypergraph& h, const MethodSpec& method);

// ---- benchmark (the table experiments) -------------------------------------

struct BenchmarkConfig {
  std::string dataset = "zoo";  // zoo | mushroom | cora | citeseer
  std::string data_dir = "data";
  std::vector<std::string> methods{"hohl-q4-qc", "clique"};
  std::vector<double> label_rates{0.05, 0.1, 0.2, 0.3, 0.5, 0.8};
  int trials = 100;
  std::uint64_t seed = 1;
  double cg_tol = 1e-8;
  // explicit materialization is used up to this vertex count, the
  // matrix-free route above it
  int materialize_threshold = 512;
  bool timing = true;  // false zeroes the seconds column for byte-stable output
};

struct BenchmarkCell {
  std::string method;
  double label_rate = 0.0;
  std::vector<double> accuracy;  // percent, per trial
  std::vector<double> seconds;   // solve time, construction excluded
  int trials_missing_class = 0;  // labeled set missed at least one class
  bool degenerate_full_rate = false;

  double mean() const;
  double stddev() const;
  double median_seconds() const;
};

struct BenchmarkResult {
  BenchmarkConfig config;
  int n_vertices = 0;
  int n_classes = 0;
  int n_hyperedges = 0;
  std::vector<BenchmarkCell> cells;

  void write_csv(std::ostream& out) const;
  std::string summary_table() const;
};

BenchmarkResult run_benchmark(const BenchmarkConfig& config);

// loads the configured dataset and returns (hypergraph, ground truth)
struct HypergraphDataset {
  Hypergraph hypergraph;
  std::vector<int> classes;
  int n_classes = 0;
};
HypergraphDataset load_benchmark_dataset(const std::string& dataset,
                                         const std::string& data_dir);

// ---- active learning -------------------------------------------------------

struct ActiveConfig {
  std::string dataset = "mnist";  // mnist | fashion-mnist | two-moons
  std::string data_dir = "data";
  int limit = 5000;  // images to load
  int budget = 100;
  int trials = 20;
  std::vector<int> k_ladder{50, 30};
  std::vector<double> lambdas{1.0, 4.0};
  std::vector<int> powers{1, 2};
  int laplace_k = 50;
  std::uint64_t seed = 1;
  double cg_tol = 1e-6;
  int moons_n = 600;
  double moons_noise = 0.1;
};

struct ActiveArm {
  std::string name;
  std::vector<std::vector<double>> curves;  // per trial, length budget+1
  std::vector<double> mean_curve() const;
  std::vector<double> std_curve() const;
  double mean_final() const;
};

struct ActiveResult {
  ActiveConfig config;
  ActiveArm laplace;
  ActiveArm hohl;
  void write_csv(std::ostream& out) const;
};

ActiveResult run_active(const ActiveConfig& config);

// ---- spectral consistency ---------------------------------------------------

struct ConsistencyConfig {
  int dim = 1;
  std::vector<int> n_ladder{250, 500, 1000, 2000};
  int seeds = 10;
  std::vector<double> lambdas{1.0, 1.0};
  std::vector<int> powers{1, 2};
  // shared-rule ladder: eps^(k) = c_k (log n / n)^{1/(dim + 4 p_q)}
  std::vector<double> ladder_constants{0.35, 0.25};
  double ladder_exponent = 0.0;  // 0 -> the shared rule above
  int eigencount = 5;
  double eig_tol = 1e-7;
  std::uint64_t seed = 1;
  KernelProfile kernel = KernelProfile::indicator;
  // truncation sweep on one fixed instance
  int trunc_n = 500;
  std::vector<int> trunc_T{5, 10, 25, 50, 100, 500};
  double trunc_tau = 1.0;
  double trunc_noise = 0.1;

  double exponent_or_default() const {
    return ladder_exponent > 0.0 ? ladder_exponent
                                 : 1.0 / (dim + 4.0 * powers.back());
  }
  std::vector<double> ladder_for(int n) const;
};

struct EigenvalueRow {
  int n = 0;
  int seed_index = 0;
  int index = 0;  // 1-based eigenvalue index
  double actual = 0.0;
  double expected = 0.0;
  double rel_error = 0.0;
};

struct ConsistencyResult {
  ConsistencyConfig config;
  std::vector<EigenvalueRow> eigen_rows;
  // median over seeds of rel_error, keyed by (n, index)
  std::map<std::pair<int, int>, double> median_rel_error;
  std::vector<std::pair<int, double>> truncation_sweep;  // (T, |v*_T - v*_n|)
  void write_csv(std::ostream& out) const;
};

ConsistencyResult run_consistency(const ConsistencyConfig& config);

// continuum spectrum ground truth: eigenvalues of the (negative) Laplacian
// on the unit torus, 4 pi^2 |m|^2 over m in Z^d, sorted with multiplicity
std::vector<double> torus_laplacian_eigenvalues(int dim, int count);

// ---- rates ------------------------------------------------------------------

void write_rates_csv(std::ostream& out, const RatesConfig& config, const RatesResult& result);

// ---- shared helpers ---------------------------------------------------------

void write_config_header(std::ostream& out,
                         const std::vector<std::pair<std::string, std::string>>& keys);

std::string resolve_data_path(const std::string& data_dir, const std::string& relative);

}  // namespace hohl

#endif
