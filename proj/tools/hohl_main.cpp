#include <Eigen/Core>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hohl/experiments.hpp"

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

void apply_thread_env() {
  if (const char* t = std::getenv("HOHL_THREADS")) {
    int n = std::atoi(t);
    if (n > 0) Eigen::setNbThreads(n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"hohl: multiscale hypergraph Laplacian learning experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; sections name subcommands");

  // benchmark -----------------------------------------------------------
  hohl::BenchmarkConfig bench;
  std::string bench_out = "benchmark.csv";
  bool no_timing = false;
  auto* cmd_bench = app.add_subcommand("benchmark", "semi-supervised accuracy tables");
  cmd_bench->add_option("--dataset", bench.dataset, "zoo | mushroom | cora | citeseer");
  cmd_bench->add_option("--data-dir", bench.data_dir, "dataset root directory");
  cmd_bench->add_option("--methods", bench.methods,
                        "method list: hohl-q<N>[-rc|-qc], clique")
      ->delimiter(',');
  cmd_bench->add_option("--rates", bench.label_rates, "label rates in (0,1]")->delimiter(',');
  cmd_bench->add_option("--trials", bench.trials, "independent trials per cell");
  cmd_bench->add_option("--seed", bench.seed, "master seed");
  cmd_bench->add_option("--cg-tol", bench.cg_tol, "CG relative tolerance");
  cmd_bench->add_option("--materialize-threshold", bench.materialize_threshold,
                        "materialize the operator up to this n");
  cmd_bench->add_flag("--no-timing", no_timing, "zero the seconds column (byte-stable output)");
  cmd_bench->add_option("--output", bench_out, "per-trial CSV path");

  // active ----------------------------------------------------------------
  hohl::ActiveConfig active;
  std::string active_out = "active.csv";
  auto* cmd_active = app.add_subcommand("active", "uncertainty-sampling active learning");
  cmd_active->add_option("--dataset", active.dataset, "mnist | fashion-mnist | two-moons");
  cmd_active->add_option("--data-dir", active.data_dir, "dataset root directory");
  cmd_active->add_option("--limit", active.limit, "images to load");
  cmd_active->add_option("--budget", active.budget, "query rounds");
  cmd_active->add_option("--trials", active.trials, "seeds");
  cmd_active->add_option("--k-ladder", active.k_ladder, "neighborhood sizes, nonincreasing")
      ->delimiter(',');
  cmd_active->add_option("--lambdas", active.lambdas, "coefficients")->delimiter(',');
  cmd_active->add_option("--powers", active.powers, "Laplacian powers")->delimiter(',');
  cmd_active->add_option("--laplace-k", active.laplace_k, "k for the Laplace arm");
  cmd_active->add_option("--seed", active.seed, "master seed");
  cmd_active->add_option("--cg-tol", active.cg_tol, "CG relative tolerance");
  cmd_active->add_option("--moons-n", active.moons_n, "two-moons sample size");
  cmd_active->add_option("--moons-noise", active.moons_noise, "two-moons noise sigma");
  cmd_active->add_option("--output", active_out, "curve CSV path");

  // consistency -------------------------------------------------------------
  hohl::ConsistencyConfig cons;
  std::string cons_out = "consistency.csv";
  auto* cmd_cons = app.add_subcommand("consistency", "eigenvalue and truncation convergence");
  cmd_cons->add_option("--dim", cons.dim, "torus dimension");
  cmd_cons->add_option("--n-ladder", cons.n_ladder, "sample sizes")->delimiter(',');
  cmd_cons->add_option("--seeds", cons.seeds, "seeds per n");
  cmd_cons->add_option("--lambdas", cons.lambdas, "coefficients")->delimiter(',');
  cmd_cons->add_option("--powers", cons.powers, "Laplacian powers")->delimiter(',');
  cmd_cons->add_option("--ladder-constants", cons.ladder_constants,
                       "epsilon ladder constants, decreasing")
      ->delimiter(',');
  cmd_cons->add_option("--ladder-exponent", cons.ladder_exponent,
                       "override the shared exponent 1/(d+4 p_q)");
  cmd_cons->add_option("--eigencount", cons.eigencount, "eigenvalues to track");
  cmd_cons->add_option("--eig-tol", cons.eig_tol, "eigensolver tolerance");
  cmd_cons->add_option("--seed", cons.seed, "master seed");
  cmd_cons->add_option("--trunc-n", cons.trunc_n, "truncation instance size");
  cmd_cons->add_option("--trunc-T", cons.trunc_T, "truncation thresholds")->delimiter(',');
  cmd_cons->add_option("--trunc-tau", cons.trunc_tau, "truncation fidelity weight");
  cmd_cons->add_option("--trunc-noise", cons.trunc_noise, "truncation label noise");
  cmd_cons->add_option("--output", cons_out, "CSV path");

  // rates ----------------------------------------------------------------
  hohl::RatesConfig rates;
  std::string rates_out = "rates.csv";
  auto* cmd_rates = app.add_subcommand("rates", "supervised error versus n");
  cmd_rates->add_option("--n-values", rates.n_values, "sample sizes")->delimiter(',');
  cmd_rates->add_option("--dim", rates.dim, "torus dimension");
  cmd_rates->add_option("--trials", rates.trials, "trials per n");
  cmd_rates->add_option("--noise", rates.noise_sigma, "label noise sigma");
  cmd_rates->add_option("--seed", rates.seed, "master seed");
  cmd_rates->add_option("--lambdas", rates.lambdas, "coefficients")->delimiter(',');
  cmd_rates->add_option("--powers", rates.powers, "Laplacian powers")->delimiter(',');
  cmd_rates->add_option("--ladder-constants", rates.ladder_constants,
                        "epsilon ladder constants, decreasing")
      ->delimiter(',');
  cmd_rates->add_option("--ladder-exponent", rates.ladder_exponent,
                        "override the default exponent 1/(d+4)");
  cmd_rates->add_option("--tau0", rates.tau0, "tau prefactor");
  cmd_rates->add_option("--tau-exponent", rates.tau_exponent, "tau = tau0 * n^exponent");
  cmd_rates->add_option("--g", rates.g_name, "label function: wave | constant");
  cmd_rates->add_option("--cg-tol", rates.cg_tol, "CG relative tolerance");
  cmd_rates->add_option("--output", rates_out, "CSV path");

  // inspect ----------------------------------------------------------------
  std::string inspect_dataset = "zoo", inspect_dir = "data";
  auto* cmd_inspect = app.add_subcommand("inspect", "hyperedge size histogram");
  cmd_inspect->add_option("--dataset", inspect_dataset, "zoo | mushroom | cora | citeseer");
  cmd_inspect->add_option("--data-dir", inspect_dir, "dataset root directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_bench) {
      bench.timing = !no_timing;
      auto result = hohl::run_benchmark(bench);
      auto out = open_output(bench_out);
      result.write_csv(out);
      std::cout << result.summary_table() << "\nper-trial results written to " << bench_out
                << "\n";
    } else if (*cmd_active) {
      auto result = hohl::run_active(active);
      auto out = open_output(active_out);
      result.write_csv(out);
      std::cout << "final accuracy (mean over " << active.trials
                << " trials): laplace=" << result.laplace.mean_final()
                << " hohl=" << result.hohl.mean_final() << "\ncurves written to " << active_out
                << "\n";
    } else if (*cmd_cons) {
      auto result = hohl::run_consistency(cons);
      auto out = open_output(cons_out);
      result.write_csv(out);
      std::cout << "median relative eigenvalue errors:\n";
      for (const auto& [key, med] : result.median_rel_error)
        std::cout << "  n=" << key.first << " index=" << key.second << " err=" << med << "\n";
      std::cout << "truncation sweep:\n";
      for (const auto& [T, err] : result.truncation_sweep)
        std::cout << "  T=" << T << " |v*_T - v*_n| = " << err << "\n";
      std::cout << "written to " << cons_out << "\n";
    } else if (*cmd_rates) {
      auto result = hohl::rates_experiment(rates);
      auto out = open_output(rates_out);
      hohl::write_rates_csv(out, rates, result);
      std::cout << "median |u - g| by n:\n";
      for (std::size_t i = 0; i < result.n_values.size(); ++i)
        std::cout << "  n=" << result.n_values[i] << " err=" << result.median_error[i] << "\n";
      std::cout << "written to " << rates_out << "\n";
    } else if (*cmd_inspect) {
      auto data = hohl::load_benchmark_dataset(inspect_dataset, inspect_dir);
      std::cout << inspect_dataset << ": n=" << data.hypergraph.n_vertices()
                << " H=" << data.hypergraph.n_hyperedges() << " classes=" << data.n_classes
                << "\nsize,count\n";
      for (const auto& [size, count] : data.hypergraph.size_histogram())
        std::cout << size << ',' << count << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
