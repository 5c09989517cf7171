#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hohl/graph_builders.hpp"
#include "test_support.hpp"

using namespace hohl;
using test::adjacency_dense;

namespace {

// 2-D Halton sequence, used as a quasi-Monte-Carlo oracle
double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  for (int i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

}  // namespace

TEST_CASE("sigma_eta indicator closed forms") {
  CHECK(sigma_eta(KernelProfile::indicator, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(sigma_eta(KernelProfile::indicator, 2) ==
        doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-14));
  CHECK(sigma_eta(KernelProfile::indicator, 3) ==
        doctest::Approx(4.0 * std::numbers::pi / 15.0).epsilon(1e-14));
}

TEST_CASE("sigma_eta smooth profile agrees with quasi-Monte-Carlo integration") {
  // (1/2) int_{R^2} eta(|h|) |h|^2 dh over the square [-1,1]^2
  Kernel k{KernelProfile::smooth_compact, 0.0};
  const int N = 10'000'000;
  double acc = 0.0;
  for (int i = 1; i <= N; ++i) {
    double x = 2.0 * halton(i, 2) - 1.0;
    double y = 2.0 * halton(i, 3) - 1.0;
    double r2 = x * x + y * y;
    acc += k.eval(std::sqrt(r2)) * r2;
  }
  double mc = acc / N * 4.0 / 2.0;  // cell volume 4, dimension 2
  double quad = sigma_eta(KernelProfile::smooth_compact, 2);
  CHECK(std::abs(quad - mc) / quad < 1e-4);
}

TEST_CASE("epsilon graph basics") {
  PointCloud pc;
  pc.points.resize(2, 1);
  pc.points << 0.0, 0.5;
  Kernel k = Kernel::make(KernelProfile::indicator, 1);
  auto w = epsilon_graph(pc, 1.0, k);
  CHECK(w.entry(0, 1) == 1.0);

  pc.points << 0.0, 2.0;
  auto empty = epsilon_graph(pc, 1.0, k);
  CHECK(empty.n_entries() == 0);  // compact support
}

TEST_CASE("epsilon graph equals the dense pairwise oracle") {
  Rng rng(3);
  PointCloud pc;
  pc.points.resize(5, 2);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 2; ++j) pc.points(i, j) = rng.normal();
  Kernel k = Kernel::make(KernelProfile::smooth_compact, 2);
  double eps = 1.7;
  auto w = epsilon_graph(pc, eps, k);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      double expect = i == j ? 0.0 : k.eval((pc.points.row(i) - pc.points.row(j)).norm() / eps);
      CHECK(w.entry(i, j) == doctest::Approx(expect).epsilon(1e-15));
    }
}

TEST_CASE("epsilon graph weights are nonincreasing in distance") {
  for (auto profile : {KernelProfile::indicator, KernelProfile::smooth_compact}) {
    Kernel k{profile, 1.0};
    double prev = k.eval(0.0);
    for (double t = 0.0; t <= 1.3; t += 0.01) {
      double cur = k.eval(t);
      CHECK(cur <= prev + 1e-15);
      prev = cur;
    }
  }
}

TEST_CASE("torus metric wraps around") {
  PointCloud pc;
  pc.metric = Metric::torus;
  pc.points.resize(2, 1);
  pc.points << 0.05, 0.95;
  CHECK(pc.distance(0, 1) == doctest::Approx(0.1).epsilon(1e-12));
  pc.points << -0.1, 0.5;
  CHECK_THROWS_AS(pc.validate(), std::invalid_argument);
}

TEST_CASE("self-tuning knn on three collinear points") {
  PointCloud pc;
  pc.points.resize(3, 1);
  pc.points << 0.0, 1.0, 2.0;
  auto w = knn_selftuning_graph(pc, 1);
  CHECK(w.entry(0, 1) == doctest::Approx(std::exp(-4.0)).epsilon(1e-14));
  CHECK(w.entry(1, 2) == doctest::Approx(std::exp(-4.0)).epsilon(1e-14));
  CHECK(w.entry(0, 2) == 0.0);
}

TEST_CASE("knn with k = n-1 connects every pair") {
  Rng rng(5);
  PointCloud pc;
  pc.points.resize(6, 2);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 2; ++j) pc.points(i, j) = rng.normal();
  auto w = knn_selftuning_graph(pc, 5);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) CHECK(w.entry(i, j) > 0.0);
}

TEST_CASE("knn equals the brute-force sort oracle") {
  Rng rng(9);
  const int n = 50, k = 5;
  PointCloud pc;
  pc.points.resize(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 3; ++j) pc.points(i, j) = rng.normal();

  // oracle: full pairwise-distance sort per row, directed weights, max-symmetrize
  Matrix expected = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> d;
    for (int j = 0; j < n; ++j)
      if (j != i) d.push_back({(pc.points.row(i) - pc.points.row(j)).norm(), j});
    std::sort(d.begin(), d.end());
    double dk = d[k - 1].first;
    for (int t = 0; t < k; ++t) {
      double w = std::exp(-4.0 * d[t].first * d[t].first / (dk * dk));
      int j = d[t].second;
      expected(i, j) = std::max(expected(i, j), w);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double m = std::max(expected(i, j), expected(j, i));
      expected(i, j) = expected(j, i) = m;
    }

  auto w = knn_selftuning_graph(pc, k);
  CHECK((adjacency_dense(w) - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(w.structurally_symmetric());
}

TEST_CASE("knn duplicate handling") {
  PointCloud pc;
  pc.points.resize(4, 1);
  pc.points << 0.0, 0.0, 1.0, 1.5;
  // k=1: nearest neighbor of point 0 is its duplicate -> d_1 = 0 -> error
  CHECK_THROWS_AS(knn_selftuning_graph(pc, 1), std::runtime_error);
  // k=2: d_2 > 0, the zero-distance pair gets the limit weight 1
  auto w = knn_selftuning_graph(pc, 2);
  CHECK(w.entry(0, 1) == 1.0);
}

TEST_CASE("knn cosine metric matches the direct formula") {
  Rng rng(21);
  PointCloud pc;
  pc.metric = Metric::cosine;
  pc.points.resize(12, 4);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 4; ++j) pc.points(i, j) = 0.1 + rng.uniform();
  auto w = knn_selftuning_graph(pc, 3);
  // spot check: every stored weight reproduces exp(-4 d^2 / d_k^2) for some direction
  PointCloud direct = pc;
  for (int i = 0; i < 12; ++i) {
    std::vector<std::pair<double, int>> d;
    for (int j = 0; j < 12; ++j)
      if (j != i) d.push_back({direct.distance(i, j), j});
    std::sort(d.begin(), d.end());
    double dk = d[2].first;
    for (int t = 0; t < 3; ++t) {
      double expect = std::exp(-4.0 * d[t].first * d[t].first / (dk * dk));
      CHECK(w.entry(i, d[t].second) >= expect - 1e-12);
    }
  }
}

TEST_CASE("rescaled laplacian arithmetic example") {
  // single unit edge, n=2, eps=1, d=1, sigma=2/3 -> c = 3/2
  auto w = WeightedAdjacency::from_triplets(2, {{{0, 1}, 1.0}});
  auto l = rescaled_laplacian(w, 2, 1.0, 1, 2.0 / 3.0);
  CHECK(l.diagonal()[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(l.offdiag_entry(0, 1) == doctest::Approx(-1.5).epsilon(1e-15));
}

TEST_CASE("rescaled laplacian scales as eps^-(d+2) for fixed W") {
  Rng rng(33);
  auto w = test::random_adjacency(rng, 10, 0.4);
  int d = 2;
  auto l1 = rescaled_laplacian(w, 10, 0.5, d, 1.0);
  auto l2 = rescaled_laplacian(w, 10, 1.0, d, 1.0);
  double factor = std::pow(2.0, d + 2);
  for (int i = 0; i < 10; ++i)
    CHECK(l1.diagonal()[i] == doctest::Approx(factor * l2.diagonal()[i]).epsilon(1e-12));
}

TEST_CASE("rescaled laplacian equals the dense c(D - W) oracle") {
  Rng rng(41);
  auto w = test::random_adjacency(rng, 15, 0.5);
  double eps = 0.3, sigma = 0.7;
  int n = 15, d = 3;
  auto l = rescaled_laplacian(w, n, eps, d, sigma);
  double c = 2.0 / (sigma * n * std::pow(eps, d + 2));
  Matrix dw = adjacency_dense(w);
  Matrix expect = c * (Matrix(dw.rowwise().sum().asDiagonal()) - dw);
  CHECK((l.dense() - expect).cwiseAbs().maxCoeff() < 1e-12 * expect.cwiseAbs().maxCoeff());
}

TEST_CASE("rescaled laplacian has zero row sums and is PSD") {
  Rng rng(55);
  for (int rep = 0; rep < 5; ++rep) {
    int n = 20 + static_cast<int>(rng.uniform_below(180));
    auto w = test::random_adjacency(rng, n, 0.1);
    auto l = rescaled_laplacian(w, n, 0.4, 2, 0.9);
    double scale = l.diagonal().size() > 0 ? std::max(1.0, l.diagonal().maxCoeff()) : 1.0;
    CHECK(l.max_row_sum_residual() <= 1e-12 * scale);
    Eigen::SelfAdjointEigenSolver<Matrix> es(l.dense());
    CHECK(es.eigenvalues()[0] >= -1e-10 * l.norm_bound());
  }
}
