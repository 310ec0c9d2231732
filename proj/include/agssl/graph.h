// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AGSSL_GRAPH_H_
#define AGSSL_GRAPH_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "agssl/linalg.h"
#include "agssl/numeric_policy.h"

namespace agssl {

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected weighted graph. Each edge is stored once and stands for both
// directions. Immutable after construction.
class Graph {
 public:
  // Validates indices, rejects self-loops, duplicate undirected edges and
  // non-positive weights. `labels`, when present, must have one +1/-1 entry
  // per node.
  static absl::StatusOr<Graph> Create(
      int num_nodes, std::vector<Edge> edges,
      std::optional<std::vector<int>> labels = std::nullopt);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::optional<std::vector<int>>& labels() const { return labels_; }

  // Returns a copy carrying `labels`.
  absl::StatusOr<Graph> WithLabels(std::vector<int> labels) const;

  Eigen::MatrixXd Adjacency() const;
  // Weighted degrees A 1.
  Eigen::VectorXd Degrees() const;
  // Component id per node, numbered by lowest member.
  std::vector<int> ComponentIds() const;
  int NumComponents() const;

 private:
  Graph(int num_nodes, std::vector<Edge> edges,
        std::optional<std::vector<int>> labels)
      : num_nodes_(num_nodes),
        edges_(std::move(edges)),
        labels_(std::move(labels)) {}

  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::optional<std::vector<int>> labels_;
};

enum class RegularizerKind { kUnnormalizedLaplacian, kNormalizedLaplacian, kCustom };

std::string_view RegularizerKindName(RegularizerKind kind);

// Prior precision matrix: a possibly singular Stieltjes matrix.
class Regularizer {
 public:
  // Validates a user-supplied matrix: symmetric, off-diagonal entries
  // <= offdiag_tol, PSD, and nullity at most one. Runs an
  // eigendecomposition.
  static absl::StatusOr<Regularizer> Custom(
      const Eigen::MatrixXd& matrix,
      const NumericPolicy& policy = DefaultPolicy());

  const SymMatrix& matrix() const { return matrix_; }
  int size() const { return matrix_.size(); }
  RegularizerKind kind() const { return kind_; }
  // Dimension of the null space. For Laplacians this is the number of
  // connected components.
  int nullity() const { return nullity_; }
  // Unit vector spanning the null space when nullity() == 1.
  const std::optional<Eigen::VectorXd>& null_vector() const {
    return null_vector_;
  }

 private:
  friend Regularizer Laplacian(const Graph& g);
  friend absl::StatusOr<Regularizer> NormalizedLaplacian(const Graph& g);

  Regularizer(SymMatrix matrix, RegularizerKind kind, int nullity,
              std::optional<Eigen::VectorXd> null_vector)
      : matrix_(std::move(matrix)),
        kind_(kind),
        nullity_(nullity),
        null_vector_(std::move(null_vector)) {}

  SymMatrix matrix_;
  RegularizerKind kind_ = RegularizerKind::kCustom;
  int nullity_ = 0;
  std::optional<Eigen::VectorXd> null_vector_;
};

// L = D - A.
Regularizer Laplacian(const Graph& g);
// L_N = D^-1/2 L D^-1/2. Fails when a node has degree zero.
absl::StatusOr<Regularizer> NormalizedLaplacian(const Graph& g);

bool IsConnected(const Graph& g);

// Parses "i j [w]" lines. Blank lines and lines starting with '#' are
// skipped. The node count is max index + 1, or n_hint when that is larger.
// With one_indexed, indices in the text start at 1.
absl::StatusOr<Graph> LoadEdgeList(std::string_view text,
                                   std::optional<int> n_hint = std::nullopt,
                                   bool one_indexed = false);

// One +1/-1 integer per line, node order; '#' comments allowed.
absl::StatusOr<std::vector<int>> LoadLabels(std::string_view text);

enum class Dataset { kKarate, kDolphin };

// Zachary's karate club (34 nodes, 78 edges) and the Doubtful Sound dolphin
// network (62 nodes, 159 edges), unweighted, with two-community labels.
Graph BuiltinDataset(Dataset which);

std::optional<Dataset> DatasetFromName(std::string_view name);
std::string_view DatasetName(Dataset which);

absl::StatusOr<std::string> ReadFile(const std::string& path);

}  // namespace agssl

#endif  // AGSSL_GRAPH_H_
