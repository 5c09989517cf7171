#include "hohl/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hohl/rng.hpp"

namespace hohl {

// ---- method naming ---------------------------------------------------------

MethodSpec MethodSpec::parse(const std::string& name) {
  MethodSpec m;
  if (name == "clique") {
    m.kind = Kind::clique_laplace;
    return m;
  }
  if (name == "laplace-knn") {
    m.kind = Kind::laplace_knn;
    return m;
  }
  if (name == "hohl-knn") {
    m.kind = Kind::hohl_knn;
    return m;
  }
  if (name.rfind("hohl-q", 0) == 0) {
    std::string rest = name.substr(6);
    std::string qpart = rest;
    if (auto dash = rest.find('-'); dash != std::string::npos) {
      qpart = rest.substr(0, dash);
      std::string suffix = rest.substr(dash + 1);
      if (suffix == "qc")
        m.quick_coeffs = true;
      else if (suffix != "rc")
        throw std::invalid_argument("method '" + name + "': suffix must be rc or qc");
    }
    try {
      m.q = std::stoi(qpart);
    } catch (const std::exception&) {
      throw std::invalid_argument("method '" + name + "': bad q");
    }
    if (m.q < 1 || m.q > 4)
      throw std::invalid_argument("method '" + name + "': q must be in 1..4");
    m.kind = Kind::hohl;
    return m;
  }
  throw std::invalid_argument("unknown method '" + name + "'");
}

std::string MethodSpec::name() const {
  switch (kind) {
    case Kind::clique_laplace: return "clique";
    case Kind::laplace_knn: return "laplace-knn";
    case Kind::hohl_knn: return "hohl-knn";
    case Kind::hohl: {
      std::string s = "hohl-q" + std::to_string(q);
      if (q > 1) s += quick_coeffs ? "-qc" : "-rc";
      return s;
    }
  }
  return "?";
}

MultiscaleOperator hohl_operator(const Hypergraph& h, const MethodSpec& method) {
  if (method.kind == MethodSpec::Kind::clique_laplace) {
    auto lap = std::make_shared<CliqueSumLaplacian>(h.n_vertices(), h.hyperedges(), h.weights());
    return MultiscaleOperator({{lap, 1.0, 1}});
  }
  if (method.kind != MethodSpec::Kind::hohl)
    throw std::invalid_argument("hohl_operator: method is not hypergraph-based");

  auto segs = segment_sizes(h, method.q);
  std::map<int, int> size_to_seg;
  for (int k = 0; k < method.q; ++k)
    for (int s : segs[k]) size_to_seg[s] = k;

  std::vector<std::vector<std::vector<int>>> edges(method.q);
  std::vector<std::vector<double>> weights(method.q);
  for (std::size_t e = 0; e < h.hyperedges().size(); ++e) {
    int k = size_to_seg.at(static_cast<int>(h.hyperedges()[e].size()));
    edges[k].push_back(h.hyperedges()[e]);
    weights[k].push_back(h.weights()[e]);
  }
  std::vector<ScaleTerm> terms;
  for (int k = 0; k < method.q; ++k) {
    auto lap = std::make_shared<CliqueSumLaplacian>(h.n_vertices(), edges[k], weights[k]);
    terms.push_back({lap, method.lambda(k + 1), k + 1});
  }
  return MultiscaleOperator(std::move(terms));
}

// ---- shared helpers ---------------------------------------------------------

void write_config_header(std::ostream& out,
                         const std::vector<std::pair<std::string, std::string>>& keys) {
  for (const auto& [k, v] : keys) out << "# " << k << "=" << v << '\n';
}

std::string resolve_data_path(const std::string& data_dir, const std::string& relative) {
  return (std::filesystem::path(data_dir) / relative).string();
}

namespace {

std::string join_doubles(const std::vector<double>& v) {
  std::ostringstream ss;
  ss.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) ss << ',';
    ss << v[i];
  }
  return ss.str();
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) ss << ',';
    ss << v[i];
  }
  return ss.str();
}

std::string join_strings(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i];
  }
  return out;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / v.size();
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (v.size() - 1));
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

// ---- benchmark --------------------------------------------------------------

double BenchmarkCell::mean() const { return mean_of(accuracy); }
double BenchmarkCell::stddev() const { return stddev_of(accuracy); }
double BenchmarkCell::median_seconds() const { return median_of(seconds); }

HypergraphDataset load_benchmark_dataset(const std::string& dataset,
                                         const std::string& data_dir) {
  HypergraphDataset out;
  if (dataset == "zoo" || dataset == "mushroom") {
    LabeledTable t = dataset == "zoo"
                         ? load_zoo(resolve_data_path(data_dir, "zoo/zoo.data"))
                         : load_mushroom(resolve_data_path(data_dir, "mushroom/agaricus-lepiota.data"));
    out.hypergraph = categorical_hypergraph(t.features.n_rows, t.features.columns);
    out.classes = t.classes;
    out.n_classes = t.n_classes;
    return out;
  }
  if (dataset == "cora" || dataset == "citeseer") {
    std::string content = resolve_data_path(data_dir, dataset + "/" + dataset + ".content");
    std::string cites = resolve_data_path(data_dir, dataset + "/" + dataset + ".cites");
    if (!std::filesystem::exists(cites)) cites.clear();
    CitationDataset d = load_citation(content, cites);
    out.hypergraph = citation_hypergraph(d);
    out.classes = d.classes;
    out.n_classes = d.n_classes;
    return out;
  }
  throw std::invalid_argument("unknown benchmark dataset '" + dataset +
                              "' (expected zoo, mushroom, cora or citeseer)");
}

BenchmarkResult run_benchmark(const BenchmarkConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("benchmark: trials must be >= 1");
  HypergraphDataset data = load_benchmark_dataset(config.dataset, config.data_dir);
  const int n = data.hypergraph.n_vertices();

  BenchmarkResult result;
  result.config = config;
  result.n_vertices = n;
  result.n_classes = data.n_classes;
  result.n_hyperedges = data.hypergraph.n_hyperedges();

  for (const std::string& mname : config.methods) {
    MethodSpec method = MethodSpec::parse(mname);
    // operator construction happens once and is excluded from solve timing
    MultiscaleOperator op = hohl_operator(data.hypergraph, method);
    std::unique_ptr<GraphLaplacian> materialized;
    if (n <= config.materialize_threshold)
      materialized = std::make_unique<GraphLaplacian>(
          op.materialize(static_cast<std::size_t>(config.materialize_threshold + 1) *
                         (config.materialize_threshold + 1)));

    for (double rate : config.label_rates) {
      if (rate <= 0.0 || rate > 1.0)
        throw std::invalid_argument("benchmark: label rates must lie in (0, 1]");
      BenchmarkCell cell;
      cell.method = method.name();
      cell.label_rate = rate;

      int count = std::max<int>(1, static_cast<int>(std::lround(rate * n)));
      count = std::min(count, n);

      for (int trial = 0; trial < config.trials; ++trial) {
        std::uint64_t s = Rng::derive(
            config.seed, config.dataset + "|" + method.name() + "|" + std::to_string(rate),
            trial);
        Rng rng(s);

        if (count == n) {
          // all vertices labeled: empty unlabeled set, 100 by convention
          cell.degenerate_full_rate = true;
          cell.accuracy.push_back(100.0);
          cell.seconds.push_back(0.0);
          continue;
        }

        LabeledDataset trial_data;
        trial_data.n = n;
        trial_data.n_classes = data.n_classes;
        trial_data.labels.assign(n, -1);
        for (int v : rng.sample_without_replacement(n, count))
          trial_data.labels[v] = data.classes[v];

        std::vector<uint8_t> seen(data.n_classes, 0);
        for (int i = 0; i < n; ++i)
          if (trial_data.labels[i] >= 0) seen[trial_data.labels[i]] = 1;
        if (std::count(seen.begin(), seen.end(), 1) < data.n_classes)
          ++cell.trials_missing_class;

        SslOptions opts;
        opts.cg_tol = config.cg_tol;
        auto t0 = std::chrono::steady_clock::now();
        SslResult res = materialized ? ssl_classify(*materialized, trial_data, opts)
                                     : ssl_classify(op, trial_data, opts);
        auto t1 = std::chrono::steady_clock::now();

        int total = 0, correct = 0;
        for (int i = 0; i < n; ++i) {
          if (trial_data.labels[i] >= 0) continue;
          ++total;
          if (res.predictions[i] == data.classes[i]) ++correct;
        }
        cell.accuracy.push_back(100.0 * correct / total);
        cell.seconds.push_back(config.timing
                                   ? std::chrono::duration<double>(t1 - t0).count()
                                   : 0.0);
      }
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

void BenchmarkResult::write_csv(std::ostream& out) const {
  out.precision(17);
  write_config_header(out, {{"command", "benchmark"},
                            {"dataset", config.dataset},
                            {"methods", join_strings(config.methods)},
                            {"label_rates", join_doubles(config.label_rates)},
                            {"trials", std::to_string(config.trials)},
                            {"seed", std::to_string(config.seed)},
                            {"cg_tol", std::to_string(config.cg_tol)},
                            {"materialize_threshold", std::to_string(config.materialize_threshold)},
                            {"n_vertices", std::to_string(n_vertices)},
                            {"n_classes", std::to_string(n_classes)},
                            {"n_hyperedges", std::to_string(n_hyperedges)}});
  out << "dataset,method,label_rate,trial,accuracy,seconds\n";
  for (const auto& cell : cells)
    for (std::size_t t = 0; t < cell.accuracy.size(); ++t)
      out << config.dataset << ',' << cell.method << ',' << cell.label_rate << ',' << t << ','
          << cell.accuracy[t] << ',' << cell.seconds[t] << '\n';
}

std::string BenchmarkResult::summary_table() const {
  // rows = label rates, columns = methods, entries mean (std)
  std::vector<double> rates;
  std::vector<std::string> methods;
  for (const auto& c : cells) {
    if (std::find(rates.begin(), rates.end(), c.label_rate) == rates.end())
      rates.push_back(c.label_rate);
    if (std::find(methods.begin(), methods.end(), c.method) == methods.end())
      methods.push_back(c.method);
  }
  auto find_cell = [&](double r, const std::string& m) -> const BenchmarkCell* {
    for (const auto& c : cells)
      if (c.label_rate == r && c.method == m) return &c;
    return nullptr;
  };
  std::ostringstream ss;
  ss << config.dataset << ": accuracy mean (std) over " << config.trials << " trials\n";
  ss << std::left << std::setw(8) << "rate";
  for (const auto& m : methods) ss << std::setw(16) << m;
  ss << "\n";
  for (double r : rates) {
    ss << std::left << std::setw(8) << r;
    for (const auto& m : methods) {
      const BenchmarkCell* c = find_cell(r, m);
      std::ostringstream cellss;
      if (c) {
        cellss << std::fixed << std::setprecision(2) << c->mean() << " (" << c->stddev() << ")";
        if (c->trials_missing_class > 0) cellss << "*";
      } else {
        cellss << "-";
      }
      ss << std::setw(16) << cellss.str();
    }
    ss << "\n";
  }
  ss << "median solve seconds per trial:\n";
  for (const auto& m : methods) {
    std::vector<double> secs;
    for (const auto& c : cells)
      if (c.method == m)
        for (double s : c.seconds) secs.push_back(s);
    ss << "  " << std::left << std::setw(14) << m << median_of(secs) << "\n";
  }
  bool missing = false, degenerate = false;
  for (const auto& c : cells) {
    missing |= c.trials_missing_class > 0;
    degenerate |= c.degenerate_full_rate;
  }
  if (missing) ss << "* some trials drew a labeled set missing at least one class\n";
  if (degenerate) ss << "note: rate 1.0 cells are 100 by convention (empty unlabeled set)\n";
  return ss.str();
}

// ---- active learning --------------------------------------------------------

std::vector<double> ActiveArm::mean_curve() const {
  if (curves.empty()) return {};
  std::vector<double> m(curves.front().size(), 0.0);
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.size(); ++i) m[i] += c[i];
  for (double& x : m) x /= curves.size();
  return m;
}

std::vector<double> ActiveArm::std_curve() const {
  if (curves.size() < 2) return std::vector<double>(curves.empty() ? 0 : curves.front().size(), 0.0);
  std::vector<double> m = mean_curve(), s(m.size(), 0.0);
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.size(); ++i) s[i] += (c[i] - m[i]) * (c[i] - m[i]);
  for (double& x : s) x = std::sqrt(x / (curves.size() - 1));
  return s;
}

double ActiveArm::mean_final() const {
  double s = 0.0;
  for (const auto& c : curves) s += c.back();
  return curves.empty() ? 0.0 : s / curves.size();
}

ActiveResult run_active(const ActiveConfig& config) {
  if (config.k_ladder.size() != config.lambdas.size() ||
      config.k_ladder.size() != config.powers.size())
    throw std::invalid_argument("active: k ladder, lambdas, powers must align");
  for (std::size_t i = 0; i + 1 < config.k_ladder.size(); ++i)
    if (config.k_ladder[i] < config.k_ladder[i + 1])
      throw std::invalid_argument("active: k ladder must be nonincreasing");

  ActiveResult result;
  result.config = config;
  result.laplace.name = "laplace";
  result.hohl.name = "hohl";

  const bool synthetic = config.dataset == "two-moons";

  PointCloud cloud;
  std::vector<int> ground_truth;
  int n_classes = 0;

  std::vector<std::shared_ptr<GraphLaplacian>> ladder_laps;
  std::shared_ptr<GraphLaplacian> laplace_lap;

  auto build_graphs = [&]() {
    ladder_laps.clear();
    for (int k : config.k_ladder)
      ladder_laps.push_back(std::make_shared<GraphLaplacian>(
          GraphLaplacian::from_adjacency(knn_selftuning_graph(cloud, k))));
    if (config.laplace_k == config.k_ladder[0]) {
      laplace_lap = ladder_laps[0];
    } else {
      laplace_lap = std::make_shared<GraphLaplacian>(
          GraphLaplacian::from_adjacency(knn_selftuning_graph(cloud, config.laplace_k)));
    }
  };

  if (!synthetic) {
    std::string base = config.dataset == "mnist" ? "mnist" : "fashion-mnist";
    if (config.dataset != "mnist" && config.dataset != "fashion-mnist")
      throw std::invalid_argument("unknown active dataset '" + config.dataset + "'");
    IdxDataset d = load_idx(resolve_data_path(config.data_dir, base + "/train-images-idx3-ubyte"),
                            resolve_data_path(config.data_dir, base + "/train-labels-idx1-ubyte"),
                            config.limit);
    if (d.cloud.points.rows() < 2) throw std::runtime_error("active: dataset too small");
    cloud = std::move(d.cloud);
    ground_truth = std::move(d.labels);
    n_classes = 1 + *std::max_element(ground_truth.begin(), ground_truth.end());
    build_graphs();
  }

  for (int trial = 0; trial < config.trials; ++trial) {
    if (synthetic) {
      SyntheticSpec spec;
      spec.kind = SyntheticKind::two_moons;
      spec.n = config.moons_n;
      spec.moons_noise = config.moons_noise;
      spec.seed = Rng::derive(config.seed, "active-data", trial);
      auto sample = sample_synthetic(spec);
      cloud = std::move(sample.cloud);
      ground_truth = std::move(sample.labels);
      n_classes = 2;
      build_graphs();
    }

    LabeledDataset data;
    data.n = cloud.n();
    data.n_classes = n_classes;
    data.labels.assign(data.n, -1);
    data.ground_truth = ground_truth;

    std::vector<ScaleTerm> hohl_terms;
    for (std::size_t k = 0; k < ladder_laps.size(); ++k)
      hohl_terms.push_back({ladder_laps[k], config.lambdas[k], config.powers[k]});
    MultiscaleOperator hohl_op(std::move(hohl_terms));
    MultiscaleOperator laplace_op({{laplace_lap, 1.0, 1}});

    SslOptions opts;
    opts.cg_tol = config.cg_tol;
    std::uint64_t arm_seed = Rng::derive(config.seed, "active-arm", trial);
    result.laplace.curves.push_back(
        active_learn(laplace_op, data, config.budget, arm_seed, opts).accuracy);
    result.hohl.curves.push_back(
        active_learn(hohl_op, data, config.budget, arm_seed, opts).accuracy);
  }
  return result;
}

void ActiveResult::write_csv(std::ostream& out) const {
  out.precision(17);
  write_config_header(
      out, {{"command", "active"},
            {"dataset", config.dataset},
            {"limit", std::to_string(config.limit)},
            {"budget", std::to_string(config.budget)},
            {"trials", std::to_string(config.trials)},
            {"k_ladder", join_ints(config.k_ladder)},
            {"lambdas", join_doubles(config.lambdas)},
            {"powers", join_ints(config.powers)},
            {"laplace_k", std::to_string(config.laplace_k)},
            {"seed", std::to_string(config.seed)},
            {"cg_tol", std::to_string(config.cg_tol)}});
  out << "arm,round,mean_accuracy,std_accuracy\n";
  for (const ActiveArm* arm : {&laplace, &hohl}) {
    auto m = arm->mean_curve();
    auto s = arm->std_curve();
    for (std::size_t r = 0; r < m.size(); ++r)
      out << arm->name << ',' << r << ',' << m[r] << ',' << s[r] << '\n';
  }
}

// ---- spectral consistency ----------------------------------------------------

std::vector<double> ConsistencyConfig::ladder_for(int n) const {
  double base = std::pow(std::log(static_cast<double>(n)) / n, exponent_or_default());
  std::vector<double> eps;
  for (double c : ladder_constants) eps.push_back(c * base);
  for (std::size_t k = 0; k + 1 < eps.size(); ++k)
    if (eps[k] <= eps[k + 1])
      throw std::invalid_argument("consistency: ladder constants must decrease");
  return eps;
}

std::vector<double> torus_laplacian_eigenvalues(int dim, int count) {
  if (dim < 1 || count < 1) throw std::invalid_argument("torus spectrum: bad arguments");
  const double c = 4.0 * std::numbers::pi * std::numbers::pi;
  for (int M = 8;; M *= 2) {
    std::vector<double> values;
    std::vector<int> m(dim, -M);
    for (;;) {
      double norm2 = 0.0;
      for (int i = 0; i < dim; ++i) norm2 += static_cast<double>(m[i]) * m[i];
      values.push_back(c * norm2);
      int i = 0;
      while (i < dim && ++m[i] > M) m[i++] = -M;
      if (i == dim) break;
    }
    std::sort(values.begin(), values.end());
    if (static_cast<int>(values.size()) >= count &&
        values[count - 1] <= c * static_cast<double>(M) * M) {
      values.resize(count);
      return values;
    }
  }
}

ConsistencyResult run_consistency(const ConsistencyConfig& config) {
  if (config.lambdas.size() != config.powers.size() ||
      config.lambdas.size() != config.ladder_constants.size())
    throw std::invalid_argument("consistency: lambdas, powers, ladder constants must align");

  ConsistencyResult result;
  result.config = config;
  Kernel kernel = Kernel::make(config.kernel, config.dim);

  // continuum ground truth: combined spectrum of the multiscale operator
  std::vector<double> beta = torus_laplacian_eigenvalues(config.dim, config.eigencount + 2);
  std::vector<double> expected(config.eigencount);
  for (int i = 0; i < config.eigencount; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < config.lambdas.size(); ++k)
      s += config.lambdas[k] * std::pow(beta[i], config.powers[k]);
    expected[i] = s;
  }

  for (int n : config.n_ladder) {
    std::vector<double> ladder = config.ladder_for(n);
    std::vector<std::vector<double>> errors_by_index(config.eigencount);
    for (int seed_index = 0; seed_index < config.seeds; ++seed_index) {
      std::uint64_t s = Rng::derive(config.seed, "consistency:n=" + std::to_string(n), seed_index);
      SyntheticSpec spec;
      spec.kind = SyntheticKind::torus_uniform;
      spec.n = n;
      spec.dim = config.dim;
      spec.seed = s;
      PointCloud cloud = sample_synthetic(spec).cloud;

      std::vector<ScaleTerm> terms;
      for (std::size_t k = 0; k < ladder.size(); ++k) {
        auto lap = std::make_shared<GraphLaplacian>(rescaled_laplacian(
            epsilon_graph(cloud, ladder[k], kernel), n, ladder[k], config.dim, kernel.sigma));
        terms.push_back({lap, config.lambdas[k], config.powers[k]});
      }
      MultiscaleOperator op(std::move(terms), ladder);
      SpectralBasis basis = smallest_eigenpairs(op, config.eigencount, config.eig_tol,
                                                Rng::splitmix(s ^ 0xE16ULL));
      for (int i = 0; i < config.eigencount; ++i) {
        double denom = std::max(std::abs(expected[i]), 1e-300);
        double rel = expected[i] == 0.0 ? std::abs(basis.eigenvalues[i])
                                        : std::abs(basis.eigenvalues[i] - expected[i]) / denom;
        result.eigen_rows.push_back({n, seed_index, i + 1, basis.eigenvalues[i], expected[i], rel});
        errors_by_index[i].push_back(rel);
      }
    }
    for (int i = 0; i < config.eigencount; ++i)
      result.median_rel_error[{n, i + 1}] = median_of(errors_by_index[i]);
  }

  // truncation sweep on one fixed instance
  {
    const int n = config.trunc_n;
    std::uint64_t s = Rng::derive(config.seed, "consistency:truncation", 0);
    SyntheticSpec spec;
    spec.kind = SyntheticKind::torus_uniform;
    spec.n = n;
    spec.dim = config.dim;
    spec.seed = s;
    PointCloud cloud = sample_synthetic(spec).cloud;
    std::vector<double> ladder = config.ladder_for(n);
    std::vector<ScaleTerm> terms;
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      auto lap = std::make_shared<GraphLaplacian>(rescaled_laplacian(
          epsilon_graph(cloud, ladder[k], kernel), n, ladder[k], config.dim, kernel.sigma));
      terms.push_back({lap, config.lambdas[k], config.powers[k]});
    }
    MultiscaleOperator op(std::move(terms), ladder);
    SpectralBasis full = smallest_eigenpairs(op, n, config.eig_tol, Rng::splitmix(s ^ 0x7A11ULL));

    Rng noise(Rng::splitmix(s ^ 0xF00DULL));
    Vector y(n);
    for (int i = 0; i < n; ++i)
      y[i] = smooth_label_function("wave", cloud.points.row(i)) + config.trunc_noise * noise.normal();
    LeastSquaresFidelity fid{y};
    Vector v_full = truncated_solve(full, fid, config.trunc_tau);
    for (int T : config.trunc_T) {
      if (T < 1 || T > n) throw std::invalid_argument("consistency: truncation T out of range");
      SpectralBasis cut;
      cut.n = n;
      cut.T = T;
      cut.eigenvalues = full.eigenvalues.head(T);
      cut.eigenvectors = full.eigenvectors.leftCols(T);
      Vector v = truncated_solve(cut, fid, config.trunc_tau);
      double err = std::sqrt((v - v_full).squaredNorm() / n);
      result.truncation_sweep.push_back({T, err});
    }
  }
  return result;
}

void ConsistencyResult::write_csv(std::ostream& out) const {
  out.precision(17);
  write_config_header(
      out, {{"command", "consistency"},
            {"dim", std::to_string(config.dim)},
            {"n_ladder", join_ints(config.n_ladder)},
            {"seeds", std::to_string(config.seeds)},
            {"lambdas", join_doubles(config.lambdas)},
            {"powers", join_ints(config.powers)},
            {"ladder_constants", join_doubles(config.ladder_constants)},
            {"ladder_exponent", std::to_string(config.exponent_or_default())},
            {"eigencount", std::to_string(config.eigencount)},
            {"eig_tol", std::to_string(config.eig_tol)},
            {"seed", std::to_string(config.seed)},
            {"trunc_n", std::to_string(config.trunc_n)},
            {"trunc_T", join_ints(config.trunc_T)},
            {"trunc_tau", std::to_string(config.trunc_tau)},
            {"trunc_noise", std::to_string(config.trunc_noise)}});
  out << "record,n,seed,index,actual,expected,rel_error\n";
  for (const auto& r : eigen_rows)
    out << "eigenvalue," << r.n << ',' << r.seed_index << ',' << r.index << ',' << r.actual << ','
        << r.expected << ',' << r.rel_error << '\n';
  for (const auto& [key, med] : median_rel_error)
    out << "median," << key.first << ",-," << key.second << ",-,-," << med << '\n';
  for (const auto& [T, err] : truncation_sweep)
    out << "truncation,-,-," << T << ",-,-," << err << '\n';
}

// ---- rates -------------------------------------------------------------------

void write_rates_csv(std::ostream& out, const RatesConfig& config, const RatesResult& result) {
  out.precision(17);
  write_config_header(
      out,
      {{"command", "rates"},
       {"n_values", join_ints(config.n_values)},
       {"dim", std::to_string(config.dim)},
       {"trials", std::to_string(config.trials)},
       {"noise_sigma", std::to_string(config.noise_sigma)},
       {"seed", std::to_string(config.seed)},
       {"lambdas", join_doubles(config.lambdas)},
       {"powers", join_ints(config.powers)},
       {"ladder_rule",
        "eps_k=c_k*(log(n)/n)^" + std::to_string(config.ladder_exponent_or_default())},
       {"ladder_constants", join_doubles(config.ladder_constants)},
       {"tau_rule", "tau=" + std::to_string(config.tau0) + "*n^" + std::to_string(config.tau_exponent)},
       {"kernel", config.kernel == KernelProfile::indicator ? "indicator" : "smooth_compact"},
       {"g", config.g_name},
       {"cg_tol", std::to_string(config.cg_tol)}});
  out << "n,trial,error,tau,ladder\n";
  for (const auto& c : result.cells) {
    out << c.n << ',' << c.trial << ',' << c.error << ',' << c.tau << ',';
    for (std::size_t i = 0; i < c.ladder.size(); ++i) {
      if (i) out << ';';
      out << c.ladder[i];
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < result.n_values.size(); ++i)
    out << result.n_values[i] << ",median," << result.median_error[i] << ",-,-\n";
}

}  // namespace hohl
