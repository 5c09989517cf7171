#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "hohl/data_io.hpp"

using namespace hohl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "hohl_io_test";
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
  std::string file(const std::string& name, const std::string& content) {
    fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }
  std::string binary(const std::string& name, const std::vector<unsigned char>& bytes) {
    fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    return p.string();
  }
};

void push_be32(std::vector<unsigned char>& v, std::uint32_t x) {
  v.push_back((x >> 24) & 0xff);
  v.push_back((x >> 16) & 0xff);
  v.push_back((x >> 8) & 0xff);
  v.push_back(x & 0xff);
}

}  // namespace

TEST_CASE("zoo loader parses the UCI row shape") {
  TempDir tmp;
  std::string rows =
      "aardvark,1,0,0,1,0,0,1,1,1,1,0,0,4,0,0,1,1\n"
      "bass,0,0,1,0,0,1,1,1,1,0,0,1,0,1,0,0,4\n"
      "chicken,0,1,1,0,1,0,0,0,1,1,0,0,2,1,0,0,2\n";
  auto t = load_zoo(tmp.file("zoo.data", rows));
  CHECK(t.features.n_rows == 3);
  CHECK(t.features.columns.size() == 16);
  CHECK(t.n_classes == 7);
  CHECK(t.classes == std::vector<int>{0, 3, 1});  // remapped 1..7 -> 0..6
  // legs is categorical: 4, 0, 2 stay distinct tokens
  CHECK(t.features.columns[12] == std::vector<std::string>{"4", "0", "2"});

  CHECK_THROWS_WITH_AS(load_zoo(tmp.file("bad.data", "name,1,2\n")),
                       doctest::Contains("row 1"), std::runtime_error);
  CHECK_THROWS_AS(load_zoo((tmp.path / "absent.data").string()), std::runtime_error);
}

TEST_CASE("mushroom loader keeps ? as a category and maps classes") {
  TempDir tmp;
  std::string rows =
      "p,x,s,n,t,p,f,c,n,k,e,e,s,s,w,w,p,w,o,p,k,s,u\n"
      "e,x,s,y,t,a,f,c,b,k,e,c,s,s,w,w,p,w,o,p,n,n,g\n"
      "e,b,s,w,t,l,f,c,b,n,e,?,s,s,w,w,p,w,o,p,n,n,m\n";
  auto t = load_mushroom(tmp.file("agaricus.data", rows));
  CHECK(t.features.n_rows == 3);
  CHECK(t.features.columns.size() == 22);
  CHECK(t.classes == std::vector<int>{1, 0, 0});
  CHECK(t.n_classes == 2);
  // '?' in stalk-root (11th feature column) is its own token
  CHECK(t.features.columns[10] == std::vector<std::string>{"e", "c", "?"});

  auto h = categorical_hypergraph(t.features.n_rows, t.features.columns);
  for (double w : h.weights()) CHECK(w == 1.0);
}

TEST_CASE("citation loader builds presence groups only") {
  TempDir tmp;
  std::string content =
      "paperA 1 0 1 ml\n"
      "paperB 1 1 0 db\n"
      "paperC 0 1 1 ml\n";
  std::string cites =
      "paperA paperB\n"
      "paperB paperX\n";
  auto d = load_citation(tmp.file("toy.content", content), tmp.file("toy.cites", cites));
  CHECK(d.n_docs == 3);
  CHECK(d.n_classes == 2);
  // classes sorted by name: db -> 0, ml -> 1
  CHECK(d.classes == std::vector<int>{1, 0, 1});
  REQUIRE(d.word_presence.size() == 3);
  CHECK(d.word_presence[0] == std::vector<int>{0, 1});
  CHECK(d.word_presence[1] == std::vector<int>{1, 2});
  CHECK(d.word_presence[2] == std::vector<int>{0, 2});
  CHECK(d.cites.size() == 1);
  CHECK(d.dangling_cites == 1);

  auto h = citation_hypergraph(d);
  CHECK(h.n_hyperedges() == 3);  // every word has support 2 here
}

TEST_CASE("synthetic sampling is a pure function of spec and seed") {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::torus_uniform;
  spec.n = 4;
  spec.dim = 2;
  spec.seed = 12345;
  auto a = sample_synthetic(spec);
  auto b = sample_synthetic(spec);
  CHECK((a.cloud.points - b.cloud.points).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.cloud.points.array() >= 0.0).all());
  CHECK((a.cloud.points.array() < 1.0).all());
}

TEST_CASE("two moons are balanced and labeled") {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::two_moons;
  spec.n = 600;
  spec.moons_noise = 0.1;
  spec.seed = 7;
  auto s = sample_synthetic(spec);
  CHECK(std::count(s.labels.begin(), s.labels.end(), 0) == 300);
  CHECK(std::count(s.labels.begin(), s.labels.end(), 1) == 300);
  CHECK(s.cloud.points.rows() == 600);
}

TEST_CASE("flat torus density reduces to the uniform sampler (two-sample KS)") {
  const int n = 10000;
  SyntheticSpec u;
  u.kind = SyntheticKind::torus_uniform;
  u.n = n;
  u.dim = 2;
  u.seed = 1001;
  SyntheticSpec flat;
  flat.kind = SyntheticKind::torus_density;
  flat.n = n;
  flat.dim = 2;
  flat.seed = 2002;
  flat.density_bump = 0.0;
  auto a = sample_synthetic(u).cloud.points;
  auto b = sample_synthetic(flat).cloud.points;

  auto ks = [&](int coord, const Matrix& x, const Matrix& y) {
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = x(i, coord);
      ys[i] = y(i, coord);
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
      if (xs[i] <= ys[j])
        ++i;
      else
        ++j;
      d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / n));
    }
    return d;
  };
  for (int c = 0; c < 2; ++c) CHECK(ks(c, a, b) <= 0.02);

  // and a genuinely bumped density does not look uniform on the margin
  SyntheticSpec bumped = flat;
  bumped.density_bump = 0.9;
  bumped.dim = 1;
  SyntheticSpec u1 = u;
  u1.dim = 1;
  auto c1 = sample_synthetic(u1).cloud.points;
  auto d1 = sample_synthetic(bumped).cloud.points;
  CHECK(ks(0, c1, d1) > 0.03);
}

TEST_CASE("idx loader honors the big-endian format") {
  TempDir tmp;
  std::vector<unsigned char> images;
  push_be32(images, 0x00000803);
  push_be32(images, 2);  // count
  push_be32(images, 2);  // rows
  push_be32(images, 2);  // cols
  for (unsigned char px : {0, 128, 255, 64, 10, 20, 30, 40}) images.push_back(px);
  std::vector<unsigned char> labels;
  push_be32(labels, 0x00000801);
  push_be32(labels, 2);
  labels.push_back(7);
  labels.push_back(1);

  auto im = tmp.binary("img.idx3", images);
  auto lb = tmp.binary("lab.idx1", labels);

  auto d = load_idx(im, lb, 2);
  CHECK(d.cloud.points.rows() == 2);
  CHECK(d.cloud.points.cols() == 4);
  CHECK(d.cloud.metric == Metric::cosine);
  CHECK(d.cloud.points(0, 2) == 1.0);  // 255 -> 1.0
  CHECK(d.cloud.points(0, 1) == doctest::Approx(128.0 / 255.0));
  CHECK(d.labels == std::vector<int>{7, 1});

  SUBCASE("limit slices a prefix; zero limit is a valid empty cloud") {
    CHECK(load_idx(im, lb, 1).cloud.points.rows() == 1);
    CHECK(load_idx(im, lb, 0).cloud.points.rows() == 0);
    CHECK(load_idx(im, lb, 99).cloud.points.rows() == 2);  // clipped to count
  }

  SUBCASE("bad magic and truncation are rejected") {
    std::vector<unsigned char> wrong = images;
    wrong[3] = 0x01;
    CHECK_THROWS_WITH_AS(load_idx(tmp.binary("w.idx3", wrong), lb, 1),
                         doctest::Contains("magic"), std::runtime_error);
    std::vector<unsigned char> cut(images.begin(), images.begin() + 18);
    CHECK_THROWS_WITH_AS(load_idx(tmp.binary("cut.idx3", cut), lb, 2),
                         doctest::Contains("truncated"), std::runtime_error);
  }
}
