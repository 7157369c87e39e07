#include "sslcc/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "sslcc/errors.hpp"

namespace sslcc {

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

// Returns false on EOF. Skips blank and '#' lines and strips a trailing CR.
bool next_record(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void fail(const std::string& what, std::string_view file, std::size_t line_no) {
  throw DataError(what + " at line " + std::to_string(line_no) + " of " + std::string(file));
}

double parse_real(const std::string& cell, std::string_view file, std::size_t line_no) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    fail("malformed real value '" + cell + "'", file, line_no);
  }
  return value;
}

}  // namespace

RawDataset parse_dataset(std::istream& nodes, std::istream& edges) {
  RawDataset out;
  std::string line;
  std::size_t line_no = 0;

  if (!next_record(nodes, line, line_no)) throw DataError("node file is empty");
  const auto header = split_tabs(line);
  if (header.size() < 2) fail("node header needs id and label columns", "node file", line_no);
  for (std::size_t c = 2; c < header.size(); ++c) {
    AttributeColumn col;
    if (header[c] == "real") {
      col.type = ColumnType::kReal;
    } else if (header[c] == "cat") {
      col.type = ColumnType::kCategorical;
    } else {
      fail("unknown column type '" + header[c] + "'", "node file", line_no);
    }
    out.columns.push_back(std::move(col));
  }

  std::unordered_map<std::string, std::size_t> index;
  while (next_record(nodes, line, line_no)) {
    const auto cells = split_tabs(line);
    if (cells.size() != header.size()) {
      fail("expected " + std::to_string(header.size()) + " fields, found " +
               std::to_string(cells.size()),
           "node file", line_no);
    }
    if (cells[0].empty()) fail("empty node id", "node file", line_no);
    if (!index.emplace(cells[0], out.ids.size()).second) {
      fail("duplicate node id '" + cells[0] + "'", "node file", line_no);
    }
    out.ids.push_back(cells[0]);
    out.labels.push_back(cells[1]);
    for (std::size_t c = 2; c < cells.size(); ++c) {
      auto& col = out.columns[c - 2];
      if (col.type == ColumnType::kReal) {
        col.real.push_back(parse_real(cells[c], "node file", line_no));
      } else {
        col.categorical.push_back(cells[c]);
      }
    }
  }
  if (out.ids.empty()) throw DataError("node file has no node rows");

  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  line_no = 0;
  while (next_record(edges, line, line_no)) {
    const auto cells = split_tabs(line);
    if (cells.size() != 2) fail("expected 2 fields", "edge file", line_no);
    auto a = index.find(cells[0]);
    auto b = index.find(cells[1]);
    if (a == index.end() || b == index.end()) {
      const std::string& bad = a == index.end() ? cells[0] : cells[1];
      throw DataError("unknown node id '" + bad + "' at line " + std::to_string(line_no) +
                      " of edge file");
    }
    if (a->second == b->second) continue;
    edge_set.emplace(std::min(a->second, b->second), std::max(a->second, b->second));
  }
  out.edges.assign(edge_set.begin(), edge_set.end());
  return out;
}

RawDataset load_dataset(const std::filesystem::path& node_path,
                        const std::filesystem::path& edge_path) {
  std::ifstream nodes(node_path);
  if (!nodes) throw DataError("cannot open node file " + node_path.string());
  std::ifstream edges(edge_path);
  if (!edges) throw DataError("cannot open edge file " + edge_path.string());
  return parse_dataset(nodes, edges);
}

void write_dataset(const RawDataset& data, const std::filesystem::path& node_path,
                   const std::filesystem::path& edge_path) {
  std::ofstream nodes(node_path);
  if (!nodes) throw DataError("cannot write " + node_path.string());
  nodes << "node_id\tlabel";
  for (const auto& col : data.columns) nodes << '\t' << (col.type == ColumnType::kReal ? "real" : "cat");
  nodes << '\n';
  nodes.precision(17);
  for (std::size_t i = 0; i < data.node_count(); ++i) {
    nodes << data.ids[i] << '\t' << data.labels[i];
    for (const auto& col : data.columns) {
      nodes << '\t';
      if (col.type == ColumnType::kReal) {
        nodes << col.real[i];
      } else {
        nodes << col.categorical[i];
      }
    }
    nodes << '\n';
  }
  std::ofstream edges(edge_path);
  if (!edges) throw DataError("cannot write " + edge_path.string());
  for (const auto& [a, b] : data.edges) edges << data.ids[a] << '\t' << data.ids[b] << '\n';
}

RawDataset remove_isolated(const RawDataset& raw) {
  std::vector<bool> linked(raw.node_count(), false);
  for (const auto& [a, b] : raw.edges) {
    linked[a] = true;
    linked[b] = true;
  }
  std::vector<std::size_t> remap(raw.node_count(), 0);
  RawDataset out;
  out.columns.resize(raw.columns.size());
  for (std::size_t c = 0; c < raw.columns.size(); ++c) out.columns[c].type = raw.columns[c].type;
  for (std::size_t i = 0; i < raw.node_count(); ++i) {
    if (!linked[i]) continue;
    remap[i] = out.ids.size();
    out.ids.push_back(raw.ids[i]);
    out.labels.push_back(raw.labels[i]);
    for (std::size_t c = 0; c < raw.columns.size(); ++c) {
      if (raw.columns[c].type == ColumnType::kReal) {
        out.columns[c].real.push_back(raw.columns[c].real[i]);
      } else {
        out.columns[c].categorical.push_back(raw.columns[c].categorical[i]);
      }
    }
  }
  if (out.ids.empty()) throw DataError("every node is isolated; nothing left after removal");
  for (const auto& [a, b] : raw.edges) out.edges.emplace_back(remap[a], remap[b]);
  return out;
}

RawDataset binarize_categorical(const RawDataset& raw) {
  RawDataset out;
  out.ids = raw.ids;
  out.labels = raw.labels;
  out.edges = raw.edges;
  for (const auto& col : raw.columns) {
    if (col.type == ColumnType::kReal) {
      out.columns.push_back(col);
      continue;
    }
    const std::set<std::string> categories(col.categorical.begin(), col.categorical.end());
    for (const auto& category : categories) {
      AttributeColumn bin;
      bin.type = ColumnType::kReal;
      bin.real.reserve(col.categorical.size());
      for (const auto& v : col.categorical) bin.real.push_back(v == category ? 1.0 : 0.0);
      out.columns.push_back(std::move(bin));
    }
  }
  return out;
}

Eigen::MatrixXd attribute_matrix(const RawDataset& raw) {
  const auto n = static_cast<Eigen::Index>(raw.node_count());
  Eigen::MatrixXd out(n, static_cast<Eigen::Index>(raw.columns.size()));
  for (std::size_t c = 0; c < raw.columns.size(); ++c) {
    if (raw.columns[c].type != ColumnType::kReal) {
      throw DataError("categorical column must be binarized before building the attribute matrix");
    }
    out.col(static_cast<Eigen::Index>(c)) =
        Eigen::Map<const Eigen::VectorXd>(raw.columns[c].real.data(), n);
  }
  return out;
}

Eigen::MatrixXd PcaTransform::transform(const Eigen::MatrixXd& x) const {
  return (x.rowwise() - mean.transpose()) * components;
}

std::pair<PcaTransform, Eigen::MatrixXd> pca_fit_transform(const Eigen::MatrixXd& attributes,
                                                           Eigen::Index k) {
  const Eigen::Index n = attributes.rows();
  const Eigen::Index d = attributes.cols();
  if (k < 1 || k > std::min(n, d)) {
    throw UsageError("PCA component count " + std::to_string(k) + " outside [1, min(N, d)]");
  }
  PcaTransform pca;
  pca.mean = attributes.colwise().mean().transpose();
  const Eigen::MatrixXd centered = attributes.rowwise() - pca.mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw DataError("PCA eigen-decomposition failed");

  // Eigen returns ascending eigenvalues.
  pca.components.resize(d, k);
  pca.eigenvalues.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const Eigen::Index src = d - 1 - j;
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    Eigen::Index big = 0;
    for (Eigen::Index r = 1; r < d; ++r) {
      if (std::abs(v(r)) > std::abs(v(big))) big = r;
    }
    if (v(big) < 0.0) v = -v;
    pca.components.col(j) = v;
    pca.eigenvalues(j) = solver.eigenvalues()(src);
  }
  Eigen::MatrixXd projected = centered * pca.components;
  return {std::move(pca), std::move(projected)};
}

Eigen::MatrixXd normalize_features(const Eigen::MatrixXd& attributes, Normalization mode) {
  if (mode == Normalization::kNone || attributes.rows() == 0) return attributes;
  Eigen::MatrixXd out(attributes.rows(), attributes.cols());
  const auto n = static_cast<double>(attributes.rows());
  for (Eigen::Index c = 0; c < attributes.cols(); ++c) {
    const auto col = attributes.col(c);
    if (mode == Normalization::kZScore) {
      const double mean = col.mean();
      const double var = (col.array() - mean).square().sum() / n;
      if (var <= 0.0) {
        out.col(c).setZero();
      } else {
        out.col(c) = (col.array() - mean) / std::sqrt(var);
      }
    } else {
      const double lo = col.minCoeff();
      const double hi = col.maxCoeff();
      if (hi <= lo) {
        out.col(c).setZero();
      } else {
        out.col(c) = (col.array() - lo) / (hi - lo);
      }
    }
  }
  return out;
}

DataGraph build_graph(const RawDataset& raw, const PreprocessOptions& options) {
  const RawDataset linked = binarize_categorical(remove_isolated(raw));
  Eigen::MatrixXd x = attribute_matrix(linked);
  if (options.pca_components > 0 && x.cols() > 0) {
    const Eigen::Index k =
        std::min<Eigen::Index>(options.pca_components, std::min(x.rows(), x.cols()));
    x = pca_fit_transform(x, k).second;
  }
  x = normalize_features(x, options.normalization);

  const std::set<std::string> domain_set(linked.labels.begin(), linked.labels.end());
  std::vector<std::string> domain(domain_set.begin(), domain_set.end());
  std::map<std::string, ClassId> class_index;
  for (std::size_t c = 0; c < domain.size(); ++c) class_index[domain[c]] = static_cast<ClassId>(c);
  std::vector<ClassId> truth;
  truth.reserve(linked.labels.size());
  for (const auto& l : linked.labels) truth.push_back(class_index.at(l));

  return DataGraph(linked.node_count(), linked.edges, std::move(x), std::move(domain),
                   std::move(truth));
}

}  // namespace sslcc
