#ifndef HOHL_DATA_IO_HPP
#define HOHL_DATA_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hohl/graph_builders.hpp"
#include "hohl/hypergraph.hpp"

namespace hohl {

// Categorical feature table; the class column is kept separate so no label
// information can reach hyperedge construction.
struct CategoricalTable {
  int n_rows = 0;
  std::vector<std::string> column_names;
  std::vector<std::vector<std::string>> columns;  // feature columns only
};

struct LabeledTable {
  CategoricalTable features;
  std::vector<int> classes;  // 0-based
  int n_classes = 0;
};

// UCI zoo.data: 101 rows, animal-name column dropped, 16 feature columns
// (15 boolean + legs, all treated categorically), classes 1..7 -> 0..6.
LabeledTable load_zoo(const std::string& path);

// UCI agaricus-lepiota.data: 8124 rows, 22 feature columns, classes
// {e, p} -> {0, 1}; '?' tokens are kept as their own category.
LabeledTable load_mushroom(const std::string& path);

// Citation corpus in the standard content format `id w_1 ... w_m class`.
// Word-presence groups (value 1) are the hyperedge candidates; absence
// groups are never formed.
struct CitationDataset {
  int n_docs = 0;
  std::vector<std::string> doc_ids;
  std::vector<std::vector<int>> word_presence;  // per word: sorted doc indices
  std::vector<int> classes;
  int n_classes = 0;
  std::vector<std::pair<int, int>> cites;  // loaded but unused by default
  int dangling_cites = 0;
};

CitationDataset load_citation(const std::string& content_path,
                              const std::string& cites_path = "");

// presence groups with support >= 2 become unit-weight hyperedges
Hypergraph citation_hypergraph(const CitationDataset& data);

enum class SyntheticKind { torus_uniform, torus_density, two_moons };

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::torus_uniform;
  int n = 0;
  int dim = 2;
  std::uint64_t seed = 0;
  // torus_density: rho(x) proportional to 1 + bump * prod_i cos(2 pi x_i),
  // |bump| < 1 keeps the density bounded away from 0 and infinity
  double density_bump = 0.5;
  double moons_noise = 0.1;  // two_moons Gaussian noise sigma
};

struct SyntheticSample {
  PointCloud cloud;
  std::vector<int> labels;  // two_moons only
};

SyntheticSample sample_synthetic(const SyntheticSpec& spec);

// IDX image/label files (big-endian, magic 0x803 / 0x801). Pixels are
// scaled to [0, 1]; images are flattened, metric set to cosine.
struct IdxDataset {
  PointCloud cloud;
  std::vector<int> labels;
};

IdxDataset load_idx(const std::string& images_path, const std::string& labels_path,
                    int limit);

}  // namespace hohl

#endif
