#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sslcc/graph.hpp"

namespace sslcc {

enum class ColumnType { kReal, kCategorical };

struct AttributeColumn {
  ColumnType type = ColumnType::kReal;
  std::vector<double> real;              // kReal
  std::vector<std::string> categorical;  // kCategorical
};

/// Parsed node and edge files. Edges are undirected, stored once with
/// first < second, sorted, and refer to positions in `ids`.
struct RawDataset {
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<AttributeColumn> columns;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t node_count() const { return ids.size(); }
};

/// Node file (tab separated, '#' comment lines ignored):
///   node_id  label  <type>  <type> ...      header; each type is real|cat
///   n1       A      0.5     x ...
/// Edge file: `src_id<TAB>dst_id` per line. Direction is dropped,
/// duplicates collapse and self-loops are discarded. Throws DataError with
/// the offending line number on malformed input.
RawDataset load_dataset(const std::filesystem::path& node_path,
                        const std::filesystem::path& edge_path);
RawDataset parse_dataset(std::istream& nodes, std::istream& edges);

void write_dataset(const RawDataset& data, const std::filesystem::path& node_path,
                   const std::filesystem::path& edge_path);

/// Drops degree-zero nodes; throws DataError if nothing remains.
RawDataset remove_isolated(const RawDataset& raw);

/// One-hot expands every categorical column; categories ordered
/// lexicographically.
RawDataset binarize_categorical(const RawDataset& raw);

/// N x d matrix of real columns. Throws DataError if a categorical column
/// is still present.
Eigen::MatrixXd attribute_matrix(const RawDataset& raw);

struct PcaTransform {
  Eigen::VectorXd mean;         // d
  Eigen::MatrixXd components;   // d x k, orthonormal columns
  Eigen::VectorXd eigenvalues;  // k, descending

  Eigen::Index k() const { return components.cols(); }
  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;
};

/// Covariance eigen-decomposition; columns sorted by descending eigenvalue
/// and signed so the largest-magnitude entry of each is positive.
std::pair<PcaTransform, Eigen::MatrixXd> pca_fit_transform(const Eigen::MatrixXd& attributes,
                                                           Eigen::Index k);

enum class Normalization { kZScore, kMinMax, kNone };

/// Per-column z-score (population variance) or [0,1] scaling; constant
/// columns become zero.
Eigen::MatrixXd normalize_features(const Eigen::MatrixXd& attributes,
                                   Normalization mode = Normalization::kZScore);

struct PreprocessOptions {
  /// 0 disables PCA; otherwise reduce to min(k, d) components.
  int pca_components = 0;
  Normalization normalization = Normalization::kZScore;
};

/// remove_isolated -> binarize_categorical -> PCA -> normalize -> DataGraph.
/// The label domain is the sorted set of label strings.
DataGraph build_graph(const RawDataset& raw, const PreprocessOptions& options = {});

}  // namespace sslcc
