#include "hohl/graph_builders.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hohl {

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::euclidean: return "euclidean";
    case Metric::torus: return "torus";
    case Metric::cosine: return "cosine";
  }
  return "?";
}

Metric metric_from_name(const std::string& name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "torus") return Metric::torus;
  if (name == "cosine") return Metric::cosine;
  throw std::invalid_argument("unknown metric '" + name + "'");
}

double PointCloud::distance(int i, int j) const {
  switch (metric) {
    case Metric::euclidean:
      return (points.row(i) - points.row(j)).norm();
    case Metric::torus: {
      double s = 0.0;
      for (int c = 0; c < points.cols(); ++c) {
        double d = std::abs(points(i, c) - points(j, c));
        d = std::min(d, 1.0 - d);
        s += d * d;
      }
      return std::sqrt(s);
    }
    case Metric::cosine: {
      double ni = points.row(i).norm(), nj = points.row(j).norm();
      if (ni == 0.0 || nj == 0.0) return 1.0;
      double sim = points.row(i).dot(points.row(j)) / (ni * nj);
      return 1.0 - sim;
    }
  }
  return 0.0;
}

void PointCloud::validate() const {
  if (points.rows() < 1 || points.cols() < 1)
    throw std::invalid_argument("point cloud: need n >= 1 and d >= 1");
  if (metric == Metric::torus) {
    if ((points.array() < 0.0).any() || (points.array() >= 1.0).any())
      throw std::invalid_argument("point cloud: torus metric requires coordinates in [0,1)");
  }
}

PointCloud PointCloud::read_csv(std::istream& in, Metric metric) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error("point csv line " + std::to_string(lineno) +
                                 ": bad value '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("point csv line " + std::to_string(lineno) +
                               ": inconsistent column count");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("point csv: no rows");
  PointCloud pc;
  pc.metric = metric;
  pc.points.resize(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) pc.points(i, j) = rows[i][j];
  pc.validate();
  return pc;
}

void PointCloud::write_csv(std::ostream& out) const {
  out.precision(17);
  for (int i = 0; i < points.rows(); ++i) {
    for (int j = 0; j < points.cols(); ++j) {
      if (j) out << ',';
      out << points(i, j);
    }
    out << '\n';
  }
}

double Kernel::eval(double t) const {
  switch (profile) {
    case KernelProfile::indicator:
      return t <= 1.0 ? 1.0 : 0.0;
    case KernelProfile::smooth_compact:
      return t < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
  }
  return 0.0;
}

Kernel Kernel::make(KernelProfile profile, int dim) {
  return Kernel{profile, sigma_eta(profile, dim)};
}

namespace {

double sphere_surface(int d) {
  // Vol(S^{d-1}) = 2 pi^{d/2} / Gamma(d/2)
  return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double sigma_eta(KernelProfile profile, int dim) {
  if (dim < 1) throw std::invalid_argument("sigma_eta: dimension must be >= 1");
  double area = sphere_surface(dim);
  if (profile == KernelProfile::indicator) {
    // (1/d) * Vol(S^{d-1}) * int_0^1 r^{d+1} dr = Vol(S^{d-1}) / (d (d+2))
    return area / (static_cast<double>(dim) * (dim + 2.0));
  }
  Kernel k{profile, 0.0};
  auto radial = [&](double r) { return k.eval(r) * std::pow(r, dim + 1); };
  double integral = integrate(radial, 0.0, 1.0, 1e-13);
  return area * integral / static_cast<double>(dim);
}

WeightedAdjacency epsilon_graph(const PointCloud& pc, double eps, const Kernel& kernel) {
  pc.validate();
  if (eps <= 0.0) throw std::invalid_argument("epsilon_graph: eps must be > 0");
  int n = pc.n();
  std::vector<std::pair<std::pair<int, int>, double>> trip;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double w = kernel.eval(pc.distance(i, j) / eps);
      if (w > 0.0) trip.push_back({{i, j}, w});
    }
  return WeightedAdjacency::from_triplets(n, std::move(trip));
}

WeightedAdjacency knn_selftuning_graph(const PointCloud& pc, int k) {
  pc.validate();
  int n = pc.n();
  if (k < 1 || k >= n) throw std::invalid_argument("knn graph: need 1 <= k < n");

  // cosine distances come from one Gram product; other metrics are direct
  Matrix gram;
  Vector norms;
  if (pc.metric == Metric::cosine) {
    gram.noalias() = pc.points * pc.points.transpose();
    norms = gram.diagonal().array().sqrt();
  }
  auto dist = [&](int i, int j) -> double {
    if (pc.metric == Metric::cosine) {
      double ni = norms[i], nj = norms[j];
      if (ni == 0.0 || nj == 0.0) return 1.0;
      return 1.0 - gram(i, j) / (ni * nj);
    }
    return pc.distance(i, j);
  };

  std::vector<std::pair<std::pair<int, int>, double>> trip;
  std::vector<std::pair<double, int>> row;
  row.reserve(n - 1);
  for (int i = 0; i < n; ++i) {
    row.clear();
    for (int j = 0; j < n; ++j)
      if (j != i) row.push_back({dist(i, j), j});
    std::partial_sort(row.begin(), row.begin() + k, row.end());
    double dk = row[k - 1].first;
    if (dk <= 0.0)
      throw std::runtime_error("knn graph: all " + std::to_string(k) +
                               " nearest neighbors of point " + std::to_string(i) +
                               " coincide with it");
    for (int t = 0; t < k; ++t) {
      double r = row[t].first;
      double w = std::exp(-4.0 * r * r / (dk * dk));
      trip.push_back({{i, row[t].second}, w});
    }
  }
  // symmetrize by max over the two directions
  std::vector<std::pair<std::pair<int, int>, double>> sym;
  for (auto& [ij, w] : trip) {
    if (ij.first > ij.second) std::swap(ij.first, ij.second);
  }
  std::sort(trip.begin(), trip.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t t = 0; t < trip.size();) {
    std::size_t m = t + 1;
    double w = trip[t].second;
    while (m < trip.size() && trip[m].first == trip[t].first) {
      w = std::max(w, trip[m].second);
      ++m;
    }
    sym.push_back({trip[t].first, w});
    t = m;
  }
  return WeightedAdjacency::from_triplets(n, std::move(sym));
}

GraphLaplacian rescaled_laplacian(const WeightedAdjacency& w, int n, double eps, int dim,
                                  double sigma) {
  if (sigma <= 0.0 || eps <= 0.0)
    throw std::invalid_argument("rescaled_laplacian: sigma and eps must be > 0");
  double c = 2.0 / (sigma * static_cast<double>(n) * std::pow(eps, dim + 2));
  return GraphLaplacian::from_adjacency(w, c);
}

}  // namespace hohl
