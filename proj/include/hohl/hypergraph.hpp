#ifndef HOHL_HYPERGRAPH_HPP
#define HOHL_HYPERGRAPH_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hohl {

// Symmetric weighted adjacency with zero diagonal, stored CSR-style with
// both orientations of every edge. Immutable after construction.
class WeightedAdjacency {
 public:
  WeightedAdjacency() = default;
  explicit WeightedAdjacency(int n_vertices) : n_(n_vertices), offsets_(n_vertices + 1, 0) {}

  // triplets hold undirected edges (i, j, w), i != j, possibly repeated;
  // repeated entries accumulate
  static WeightedAdjacency from_triplets(int n_vertices,
                                         std::vector<std::pair<std::pair<int, int>, double>> triplets);

  int n_vertices() const { return n_; }
  std::size_t n_entries() const { return cols_.size(); }  // directed count

  // weight of edge {i, j}; 0 if absent or i == j
  double entry(int i, int j) const;

  double degree(int i) const;

  // neighbors of row i: parallel spans into cols/vals
  const int* row_cols(int i) const { return cols_.data() + offsets_[i]; }
  const double* row_vals(int i) const { return vals_.data() + offsets_[i]; }
  int row_size(int i) const { return static_cast<int>(offsets_[i + 1] - offsets_[i]); }

  WeightedAdjacency& operator+=(const WeightedAdjacency& other);

  bool structurally_symmetric() const;

 private:
  int n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<int> cols_;
  std::vector<double> vals_;
};

// Vertex set plus weighted hyperedges (vertex-index sets, |e| >= 2).
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(int n_vertices, std::vector<std::vector<int>> hyperedges,
             std::vector<double> weights = {});

  int n_vertices() const { return n_; }
  int n_hyperedges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::vector<int>>& hyperedges() const { return edges_; }
  const std::vector<double>& weights() const { return weights_; }

  // max |e| - 1; 0 when there are no hyperedges
  int max_order() const;

  std::vector<int> distinct_sizes_descending() const;

  // histogram size -> count, for the inspect command
  std::map<int, int> size_histogram() const;

  static Hypergraph read(std::istream& in, int n_vertices);
  void write(std::ostream& out) const;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> edges_;  // each sorted ascending, size >= 2
  std::vector<double> weights_;
};

// Skeleton decomposition: for each hyperedge size s present, the graph of
// all pairwise edges induced by size-s hyperedges. Edge weights accumulate
// the weights of every covering hyperedge.
std::map<int, WeightedAdjacency> skeleton_decompose(const Hypergraph& h);

// Size-segmented skeleton aggregation: distinct sizes sorted descending are
// split into q contiguous segments (lengths differ by at most one, earlier
// segments take the remainder); segment k is the entrywise sum of the
// skeleton adjacencies of its sizes. Segment q holds the smallest sizes and
// is paired downstream with the highest power.
std::vector<WeightedAdjacency> group_segments(const Hypergraph& h, int q);

// The size segments themselves (parallel to group_segments output).
std::vector<std::vector<int>> segment_sizes(const Hypergraph& h, int q);

// One hyperedge per (column, value) pair with support >= 2, unit weight.
Hypergraph categorical_hypergraph(int n_rows,
                                  const std::vector<std::vector<std::string>>& columns);

// All sizes pooled into a single weighted graph.
WeightedAdjacency clique_expand(const Hypergraph& h);

}  // namespace hohl

#endif
