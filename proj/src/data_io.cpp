#include "hohl/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hohl/rng.hpp"

namespace hohl {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    out.push_back(cell);
  }
  return out;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'; see README for dataset placement");
  return in;
}

}  // namespace

LabeledTable load_zoo(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  LabeledTable t;
  static const char* kNames[] = {"hair", "feathers", "eggs", "milk", "airborne", "aquatic",
                                 "predator", "toothed", "backbone", "breathes", "venomous",
                                 "fins", "legs", "tail", "domestic", "catsize"};
  t.features.column_names.assign(kNames, kNames + 16);
  t.features.columns.resize(16);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (cells.size() != 18)
      throw std::runtime_error("zoo row " + std::to_string(lineno) + ": expected 18 fields, got " +
                               std::to_string(cells.size()));
    for (int c = 0; c < 16; ++c) t.features.columns[c].push_back(cells[c + 1]);
    int cls;
    try {
      cls = std::stoi(cells[17]);
    } catch (const std::exception&) {
      throw std::runtime_error("zoo row " + std::to_string(lineno) + ": bad class '" + cells[17] + "'");
    }
    if (cls < 1 || cls > 7)
      throw std::runtime_error("zoo row " + std::to_string(lineno) + ": class out of 1..7");
    t.classes.push_back(cls - 1);
    ++t.features.n_rows;
  }
  t.n_classes = 7;
  return t;
}

LabeledTable load_mushroom(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  LabeledTable t;
  t.features.columns.resize(22);
  for (int c = 0; c < 22; ++c) t.features.column_names.push_back("attr" + std::to_string(c + 1));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (cells.size() != 23)
      throw std::runtime_error("mushroom row " + std::to_string(lineno) +
                               ": expected 23 fields, got " + std::to_string(cells.size()));
    if (cells[0] != "e" && cells[0] != "p")
      throw std::runtime_error("mushroom row " + std::to_string(lineno) + ": class must be e or p");
    t.classes.push_back(cells[0] == "e" ? 0 : 1);
    for (int c = 0; c < 22; ++c) t.features.columns[c].push_back(cells[c + 1]);
    ++t.features.n_rows;
  }
  t.n_classes = 2;
  return t;
}

CitationDataset load_citation(const std::string& content_path, const std::string& cites_path) {
  std::ifstream in = open_or_throw(content_path);
  CitationDataset d;
  std::map<std::string, int> id_index;
  std::map<std::string, int> class_index;
  std::vector<std::vector<int>> doc_words;  // per doc: word columns with value 1
  std::string line;
  int lineno = 0;
  int n_words = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::vector<std::string> tok;
    std::string s;
    while (ss >> s) tok.push_back(s);
    if (tok.size() < 3)
      throw std::runtime_error("content line " + std::to_string(lineno) + ": too few fields");
    int m = static_cast<int>(tok.size()) - 2;
    if (n_words < 0) n_words = m;
    if (m != n_words)
      throw std::runtime_error("content line " + std::to_string(lineno) +
                               ": inconsistent word count");
    d.doc_ids.push_back(tok[0]);
    id_index[tok[0]] = d.n_docs;
    std::vector<int> present;
    for (int w = 0; w < m; ++w) {
      if (tok[w + 1] == "1")
        present.push_back(w);
      else if (tok[w + 1] != "0")
        throw std::runtime_error("content line " + std::to_string(lineno) +
                                 ": word feature must be 0 or 1");
    }
    doc_words.push_back(std::move(present));
    auto [it, inserted] = class_index.insert({tok.back(), -1});
    (void)inserted;
    d.classes.push_back(0);  // fill after class ids are final
    ++d.n_docs;
  }
  // deterministic class ids: sorted by class name
  int next = 0;
  for (auto& [name, idx] : class_index) idx = next++;
  d.n_classes = next;
  {
    std::ifstream again = open_or_throw(content_path);
    int doc = 0;
    while (std::getline(again, line)) {
      if (line.empty()) continue;
      std::istringstream ss(line);
      std::vector<std::string> tok;
      std::string s;
      while (ss >> s) tok.push_back(s);
      d.classes[doc++] = class_index.at(tok.back());
    }
  }
  d.word_presence.assign(n_words > 0 ? n_words : 0, {});
  for (int doc = 0; doc < d.n_docs; ++doc)
    for (int w : doc_words[doc]) d.word_presence[w].push_back(doc);

  if (!cites_path.empty()) {
    std::ifstream cin_ = open_or_throw(cites_path);
    while (std::getline(cin_, line)) {
      if (line.empty()) continue;
      std::istringstream ss(line);
      std::string a, b;
      if (!(ss >> a >> b)) continue;
      auto ia = id_index.find(a), ib = id_index.find(b);
      if (ia == id_index.end() || ib == id_index.end()) {
        ++d.dangling_cites;
        continue;
      }
      d.cites.push_back({ia->second, ib->second});
    }
  }
  return d;
}

Hypergraph citation_hypergraph(const CitationDataset& data) {
  std::vector<std::vector<int>> edges;
  for (const auto& group : data.word_presence)
    if (group.size() >= 2) edges.push_back(group);
  return Hypergraph(data.n_docs, std::move(edges));
}

SyntheticSample sample_synthetic(const SyntheticSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("sample_synthetic: n must be >= 1");
  Rng rng(spec.seed);
  SyntheticSample out;
  switch (spec.kind) {
    case SyntheticKind::torus_uniform: {
      out.cloud.metric = Metric::torus;
      out.cloud.points.resize(spec.n, spec.dim);
      for (int i = 0; i < spec.n; ++i)
        for (int c = 0; c < spec.dim; ++c) out.cloud.points(i, c) = rng.uniform();
      break;
    }
    case SyntheticKind::torus_density: {
      double a = spec.density_bump;
      if (std::abs(a) >= 1.0)
        throw std::invalid_argument("torus_density: |bump| must be < 1 to keep rho positive");
      out.cloud.metric = Metric::torus;
      out.cloud.points.resize(spec.n, spec.dim);
      const double rho_max = 1.0 + std::abs(a);
      std::vector<double> x(spec.dim);
      for (int i = 0; i < spec.n; ++i) {
        for (;;) {  // rejection against the bounded closed-form density
          double prod = 1.0;
          for (int c = 0; c < spec.dim; ++c) {
            x[c] = rng.uniform();
            prod *= std::cos(2.0 * std::numbers::pi * x[c]);
          }
          double rho = 1.0 + a * prod;
          if (rng.uniform() * rho_max <= rho) break;
        }
        for (int c = 0; c < spec.dim; ++c) out.cloud.points(i, c) = x[c];
      }
      break;
    }
    case SyntheticKind::two_moons: {
      out.cloud.metric = Metric::euclidean;
      out.cloud.points.resize(spec.n, 2);
      out.labels.resize(spec.n);
      int n_upper = spec.n - spec.n / 2;
      for (int i = 0; i < spec.n; ++i) {
        bool upper = i < n_upper;
        double t = rng.uniform() * std::numbers::pi;
        double px, py;
        if (upper) {
          px = std::cos(t);
          py = std::sin(t);
        } else {
          px = 1.0 - std::cos(t);
          py = 0.5 - std::sin(t);
        }
        out.cloud.points(i, 0) = px + spec.moons_noise * rng.normal();
        out.cloud.points(i, 1) = py + spec.moons_noise * rng.normal();
        out.labels[i] = upper ? 0 : 1;
      }
      break;
    }
  }
  return out;
}

namespace {

std::uint32_t read_be32(std::istream& in, const std::string& what) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw std::runtime_error("idx: truncated while reading " + what);
  return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
         (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

}  // namespace

IdxDataset load_idx(const std::string& images_path, const std::string& labels_path, int limit) {
  if (limit < 0) throw std::invalid_argument("load_idx: limit must be >= 0");
  std::ifstream im = open_or_throw(images_path);
  std::uint32_t magic = read_be32(im, "image magic");
  if (magic != 0x00000803)
    throw std::runtime_error("idx: bad image magic (expected 0x00000803)");
  std::uint32_t count = read_be32(im, "image count");
  std::uint32_t rows = read_be32(im, "rows");
  std::uint32_t cols = read_be32(im, "cols");

  std::ifstream lb = open_or_throw(labels_path);
  std::uint32_t lmagic = read_be32(lb, "label magic");
  if (lmagic != 0x00000801)
    throw std::runtime_error("idx: bad label magic (expected 0x00000801)");
  std::uint32_t lcount = read_be32(lb, "label count");
  if (lcount != count) throw std::runtime_error("idx: image/label count mismatch");

  int take = std::min<int>(limit, static_cast<int>(count));
  int d = static_cast<int>(rows * cols);
  IdxDataset out;
  out.cloud.metric = Metric::cosine;
  out.cloud.points.resize(take, d);
  std::vector<unsigned char> buf(d);
  for (int i = 0; i < take; ++i) {
    if (!im.read(reinterpret_cast<char*>(buf.data()), d))
      throw std::runtime_error("idx: truncated image data at image " + std::to_string(i));
    for (int j = 0; j < d; ++j) out.cloud.points(i, j) = buf[j] / 255.0;
  }
  out.labels.resize(take);
  std::vector<unsigned char> lbuf(take);
  if (take > 0 && !lb.read(reinterpret_cast<char*>(lbuf.data()), take))
    throw std::runtime_error("idx: truncated label data");
  for (int i = 0; i < take; ++i) out.labels[i] = lbuf[i];
  return out;
}

}  // namespace hohl
