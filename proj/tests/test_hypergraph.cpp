#include <sstream>

#include "doctest.h"
#include "hohl/hypergraph.hpp"
#include "test_support.hpp"

using namespace hohl;
using test::adjacency_dense;

TEST_CASE("skeleton of a single 3-hyperedge is the triangle") {
  Hypergraph h(3, {{0, 1, 2}});
  auto skel = skeleton_decompose(h);
  REQUIRE(skel.size() == 1);
  const auto& tri = skel.at(3);
  CHECK(tri.entry(0, 1) == 1.0);
  CHECK(tri.entry(0, 2) == 1.0);
  CHECK(tri.entry(1, 2) == 1.0);
  CHECK(tri.entry(1, 0) == 1.0);
  CHECK(tri.n_entries() == 6);
}

TEST_CASE("a graph is its own skeleton") {
  Hypergraph h(2, {{0, 1}});
  auto skel = skeleton_decompose(h);
  REQUIRE(skel.size() == 1);
  CHECK(skel.at(2).entry(0, 1) == 1.0);
}

TEST_CASE("overlapping hyperedges accumulate skeleton multiplicity") {
  Hypergraph h(4, {{0, 1, 2}, {1, 2, 3}});
  auto skel = skeleton_decompose(h);
  REQUIRE(skel.size() == 1);
  const auto& g = skel.at(3);
  CHECK(g.entry(0, 1) == 1.0);
  CHECK(g.entry(0, 2) == 1.0);
  CHECK(g.entry(1, 3) == 1.0);
  CHECK(g.entry(2, 3) == 1.0);
  CHECK(g.entry(1, 2) == 2.0);
  CHECK(g.entry(0, 3) == 0.0);
}

TEST_CASE("skeleton separates hyperedge sizes and leaves other vertices isolated") {
  Hypergraph h(5, {{0, 1, 2}, {3, 4}});
  auto skel = skeleton_decompose(h);
  REQUIRE(skel.size() == 2);
  CHECK(skel.at(3).entry(3, 4) == 0.0);
  CHECK(skel.at(2).entry(3, 4) == 1.0);
  CHECK(skel.at(2).degree(0) == 0.0);
}

TEST_CASE("empty hypergraph decomposes to an empty map") {
  Hypergraph h(4, {});
  CHECK(skeleton_decompose(h).empty());
}

TEST_CASE("segment split follows descending sizes with remainder first") {
  // sizes {5,4,3,2}, q=2 -> {5,4} and {3,2}
  Hypergraph h(10, {{0, 1, 2, 3, 4}, {0, 1, 2, 3}, {4, 5, 6}, {7, 8}});
  auto segs = segment_sizes(h, 2);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0] == std::vector<int>{5, 4});
  CHECK(segs[1] == std::vector<int>{3, 2});

  // sizes {6,5,3,2} (duplicate 2 deduped), q=3 -> {6,5},{3},{2}
  Hypergraph h2(10, {{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4}, {4, 5, 6}, {7, 8}, {8, 9}});
  auto segs3 = segment_sizes(h2, 3);
  REQUIRE(segs3.size() == 3);
  CHECK(segs3[0] == std::vector<int>{6, 5});
  CHECK(segs3[1] == std::vector<int>{3});
  CHECK(segs3[2] == std::vector<int>{2});
}

TEST_CASE("single segment equals the skeleton") {
  Hypergraph h(3, {{0, 1, 2}});
  auto segs = group_segments(h, 1);
  REQUIRE(segs.size() == 1);
  CHECK(adjacency_dense(segs[0]) == adjacency_dense(skeleton_decompose(h).at(3)));
}

TEST_CASE("q above the distinct size count is rejected with advice") {
  Hypergraph h(3, {{0, 1, 2}});
  CHECK_THROWS_WITH_AS(group_segments(h, 2),
                       doctest::Contains("reduce q"), std::invalid_argument);
  CHECK_THROWS_AS(group_segments(Hypergraph(3, {}), 1), std::invalid_argument);
}

TEST_CASE("segments sum to the full skeleton map entrywise") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    Hypergraph h = test::random_hypergraph(rng, 12, 8, 2, 6);
    auto skel = skeleton_decompose(h);
    Matrix total = Matrix::Zero(12, 12);
    for (const auto& [s, adj] : skel) total += adjacency_dense(adj);
    int q = 1 + static_cast<int>(rng.uniform_below(skel.size()));
    auto segs = group_segments(h, q);
    Matrix seg_total = Matrix::Zero(12, 12);
    for (const auto& adj : segs) {
      seg_total += adjacency_dense(adj);
      CHECK(adj.structurally_symmetric());
    }
    // the two sides accumulate the same weights in different orders
    CHECK((total - seg_total).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("categorical construction drops singleton supports") {
  auto h = categorical_hypergraph(3, {{"a", "a", "b"}});
  REQUIRE(h.n_hyperedges() == 1);
  CHECK(h.hyperedges()[0] == std::vector<int>{0, 1});
  CHECK(h.weights()[0] == 1.0);
}

TEST_CASE("categorical construction makes one hyperedge per column value") {
  auto h = categorical_hypergraph(4, {{"a", "a", "b", "b"}, {"x", "y", "x", "y"}});
  REQUIRE(h.n_hyperedges() == 4);
  std::vector<std::vector<int>> expect = {{0, 1}, {2, 3}, {0, 2}, {1, 3}};
  CHECK(h.hyperedges() == expect);
}

TEST_CASE("categorical construction commutes with row permutations") {
  Rng rng(11);
  int n = 9;
  std::vector<std::vector<std::string>> cols(3, std::vector<std::string>(n));
  const char* toks[] = {"u", "v", "w"};
  for (auto& col : cols)
    for (auto& cell : col) cell = toks[rng.uniform_below(3)];

  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  rng.shuffle(perm);
  std::vector<std::vector<std::string>> permuted(3, std::vector<std::string>(n));
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < n; ++i) permuted[c][perm[i]] = cols[c][i];

  auto base = clique_expand(categorical_hypergraph(n, cols));
  auto moved = clique_expand(categorical_hypergraph(n, permuted));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) CHECK(base.entry(i, j) == moved.entry(perm[i], perm[j]));
}

TEST_CASE("clique expansion pools all sizes") {
  Hypergraph tri(3, {{0, 1, 2}});
  auto w = clique_expand(tri);
  CHECK(w.entry(0, 1) == 1.0);
  CHECK(w.entry(1, 2) == 1.0);

  Hypergraph dup(2, {{0, 1}, {0, 1}});
  CHECK(clique_expand(dup).entry(0, 1) == 2.0);
}

TEST_CASE("clique expansion equals the entrywise skeleton sum") {
  Rng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    Hypergraph h = test::random_hypergraph(rng, 10, 6, 2, 5);
    Matrix total = Matrix::Zero(10, 10);
    for (const auto& [s, adj] : skeleton_decompose(h)) total += adjacency_dense(adj);
    CHECK((adjacency_dense(clique_expand(h)) - total).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("uniform-size hypergraph: clique expansion equals the single skeleton") {
  Rng rng(17);
  Hypergraph h = test::random_hypergraph(rng, 10, 6, 3, 3);
  auto skel = skeleton_decompose(h);
  REQUIRE(skel.size() == 1);
  CHECK((adjacency_dense(clique_expand(h)) - adjacency_dense(skel.at(3))).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("hypergraph validation") {
  CHECK_THROWS_AS(Hypergraph(3, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(3, {{0, 5}}), std::out_of_range);
  CHECK_THROWS_AS(Hypergraph(3, {{0, 1}}, {-1.0}), std::invalid_argument);
  // repeated vertices collapse to the underlying set
  Hypergraph dedup(3, {{0, 1, 1}});
  CHECK(dedup.hyperedges()[0] == std::vector<int>{0, 1});
  CHECK_THROWS_AS(Hypergraph(3, {{1, 1}}), std::invalid_argument);
}

TEST_CASE("hyperedge file round trip with comments and weights") {
  std::string text = "# a comment\n0 1 2\n1 3 w=2.5\n\n";
  std::istringstream in(text);
  Hypergraph h = Hypergraph::read(in, 4);
  REQUIRE(h.n_hyperedges() == 2);
  CHECK(h.hyperedges()[0] == std::vector<int>{0, 1, 2});
  CHECK(h.weights()[1] == 2.5);

  std::ostringstream out;
  h.write(out);
  std::istringstream in2(out.str());
  Hypergraph h2 = Hypergraph::read(in2, 4);
  CHECK(h2.hyperedges() == h.hyperedges());
  CHECK(h2.weights() == h.weights());

  std::istringstream bad("0 x 2\n");
  CHECK_THROWS_WITH_AS(Hypergraph::read(bad, 4), doctest::Contains("line 1"),
                       std::runtime_error);
}
