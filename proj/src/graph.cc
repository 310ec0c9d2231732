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

#include "agssl/graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "Eigen/Eigenvalues"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "datasets_internal.h"

namespace agssl {

namespace {

// Union-find over node indices.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

// This abseil build keeps its own string_view type.
absl::string_view AbslView(std::string_view s) {
  return absl::string_view(s.data(), s.size());
}

std::vector<absl::string_view> Tokens(absl::string_view line) {
  return absl::StrSplit(line, absl::ByAnyChar(" \t\r,"), absl::SkipEmpty());
}

bool IsCommentOrBlank(absl::string_view line) {
  line = absl::StripAsciiWhitespace(line);
  return line.empty() || line.front() == '#';
}

}  // namespace

absl::StatusOr<Graph> Graph::Create(int num_nodes, std::vector<Edge> edges,
                                    std::optional<std::vector<int>> labels) {
  if (num_nodes <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("node count must be positive, got ", num_nodes));
  }
  std::set<std::pair<int, int>> seen;
  for (size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    if (e.u < 0 || e.u >= num_nodes || e.v < 0 || e.v >= num_nodes) {
      return absl::InvalidArgumentError(
          absl::StrCat("edge ", k, " (", e.u, ",", e.v,
                       ") has a node index outside [0, ", num_nodes, ")"));
    }
    if (e.u == e.v) {
      return absl::InvalidArgumentError(
          absl::StrCat("edge ", k, " is a self-loop at node ", e.u));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "edge ", k, " has non-positive weight ", e.weight));
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "edge ", k, " duplicates undirected edge (", e.u, ",", e.v, ")"));
    }
  }
  if (labels.has_value()) {
    if (static_cast<int>(labels->size()) != num_nodes) {
      return absl::InvalidArgumentError(absl::StrCat(
          "label vector has length ", labels->size(), ", expected ",
          num_nodes));
    }
    for (int label : *labels) {
      if (label != 1 && label != -1) {
        return absl::InvalidArgumentError(
            absl::StrCat("labels must be +1 or -1, got ", label));
      }
    }
  }
  return Graph(num_nodes, std::move(edges), std::move(labels));
}

absl::StatusOr<Graph> Graph::WithLabels(std::vector<int> labels) const {
  return Create(num_nodes_, edges_, std::move(labels));
}

Eigen::MatrixXd Graph::Adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(num_nodes_, num_nodes_);
  for (const Edge& e : edges_) {
    a(e.u, e.v) = e.weight;
    a(e.v, e.u) = e.weight;
  }
  return a;
}

Eigen::VectorXd Graph::Degrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(num_nodes_);
  for (const Edge& e : edges_) {
    d(e.u) += e.weight;
    d(e.v) += e.weight;
  }
  return d;
}

std::vector<int> Graph::ComponentIds() const {
  DisjointSets sets(num_nodes_);
  for (const Edge& e : edges_) sets.Union(e.u, e.v);
  std::vector<int> ids(num_nodes_);
  for (int i = 0; i < num_nodes_; ++i) ids[i] = sets.Find(i);
  return ids;
}

int Graph::NumComponents() const {
  std::vector<int> ids = ComponentIds();
  int count = 0;
  for (int i = 0; i < num_nodes_; ++i) count += (ids[i] == i);
  return count;
}

bool IsConnected(const Graph& g) { return g.NumComponents() == 1; }

std::string_view RegularizerKindName(RegularizerKind kind) {
  switch (kind) {
    case RegularizerKind::kUnnormalizedLaplacian:
      return "L";
    case RegularizerKind::kNormalizedLaplacian:
      return "Ln";
    case RegularizerKind::kCustom:
      return "custom";
  }
  return "custom";
}

Regularizer Laplacian(const Graph& g) {
  const int n = g.num_nodes();
  Eigen::MatrixXd l = -g.Adjacency();
  l.diagonal() = g.Degrees();
  const int nullity = g.NumComponents();
  std::optional<Eigen::VectorXd> null_vector;
  if (nullity == 1) {
    null_vector = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  }
  return Regularizer(SymMatrix::Symmetrized(l),
                     RegularizerKind::kUnnormalizedLaplacian, nullity,
                     std::move(null_vector));
}

absl::StatusOr<Regularizer> NormalizedLaplacian(const Graph& g) {
  const int n = g.num_nodes();
  const Eigen::VectorXd d = g.Degrees();
  for (int i = 0; i < n; ++i) {
    if (!(d(i) > 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "node ", i, " has degree zero; normalized Laplacian undefined"));
    }
  }
  const Eigen::VectorXd inv_sqrt = d.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd ln = Eigen::MatrixXd::Identity(n, n);
  for (const Edge& e : g.edges()) {
    const double w = -e.weight * inv_sqrt(e.u) * inv_sqrt(e.v);
    ln(e.u, e.v) = w;
    ln(e.v, e.u) = w;
  }
  const int nullity = g.NumComponents();
  std::optional<Eigen::VectorXd> null_vector;
  if (nullity == 1) null_vector = d.cwiseSqrt().normalized();
  return Regularizer(SymMatrix::Symmetrized(ln),
                     RegularizerKind::kNormalizedLaplacian, nullity,
                     std::move(null_vector));
}

absl::StatusOr<Regularizer> Regularizer::Custom(const Eigen::MatrixXd& matrix,
                                                const NumericPolicy& policy) {
  absl::StatusOr<SymMatrix> sym = SymMatrix::FromDense(matrix, policy);
  if (!sym.ok()) return sym.status();
  const int n = sym->size();
  if (n == 0) return absl::InvalidArgumentError("regularizer is empty");
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i != j && (*sym)(i, j) > policy.offdiag_tol) {
        return absl::InvalidArgumentError(absl::StrCat(
            "regularizer is not Stieltjes: entry (", i, ",", j, ") = ",
            (*sym)(i, j), " is positive"));
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym->dense());
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double scale = std::max(lambda(n - 1), 0.0);
  if (lambda(0) < -policy.psd_rel_tol * scale) {
    return absl::InvalidArgumentError(absl::StrCat(
        "regularizer is not positive semidefinite: smallest eigenvalue ",
        lambda(0)));
  }
  int nullity = 0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(lambda(i)) <= policy.psd_rel_tol * scale) ++nullity;
  }
  if (nullity > 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "regularizer has nullity ", nullity, "; at most 1 is supported"));
  }
  std::optional<Eigen::VectorXd> null_vector;
  if (nullity == 1) null_vector = eig.eigenvectors().col(0);
  return Regularizer(*std::move(sym), RegularizerKind::kCustom, nullity,
                     std::move(null_vector));
}

absl::StatusOr<Graph> LoadEdgeList(std::string_view text,
                                   std::optional<int> n_hint,
                                   bool one_indexed) {
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;
  int max_index = -1;
  int line_number = 0;
  const int offset = one_indexed ? 1 : 0;
  for (absl::string_view line : absl::StrSplit(AbslView(text), '\n')) {
    ++line_number;
    if (IsCommentOrBlank(line)) continue;
    std::vector<absl::string_view> tokens = Tokens(line);
    if (tokens.size() != 2 && tokens.size() != 3) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": expected \"i j [w]\", got \"",
          absl::StripAsciiWhitespace(line), "\""));
    }
    int64_t raw_u = 0;
    int64_t raw_v = 0;
    if (!absl::SimpleAtoi(tokens[0], &raw_u) ||
        !absl::SimpleAtoi(tokens[1], &raw_v)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": node indices must be integers"));
    }
    raw_u -= offset;
    raw_v -= offset;
    constexpr int64_t kMaxIndex = std::numeric_limits<int>::max() - 1;
    if (raw_u < 0 || raw_v < 0 || raw_u > kMaxIndex || raw_v > kMaxIndex) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": node index out of range"));
    }
    double w = 1.0;
    if (tokens.size() == 3 && !absl::SimpleAtod(tokens[2], &w)) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": weight is not a number"));
    }
    const int u = static_cast<int>(raw_u);
    const int v = static_cast<int>(raw_v);
    if (u == v) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": self-loop at node ", u));
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": weight must be positive, got ", w));
    }
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": duplicate edge (", u, ",", v, ")"));
    }
    max_index = std::max({max_index, u, v});
    edges.push_back({u, v, w});
  }
  int n = max_index + 1;
  if (n_hint.has_value() && *n_hint > n) n = *n_hint;
  return Graph::Create(n, std::move(edges));
}

absl::StatusOr<std::vector<int>> LoadLabels(std::string_view text) {
  std::vector<int> labels;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(AbslView(text), '\n')) {
    ++line_number;
    if (IsCommentOrBlank(line)) continue;
    int label = 0;
    if (!absl::SimpleAtoi(absl::StripAsciiWhitespace(line), &label) ||
        (label != 1 && label != -1)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": label must be +1 or -1"));
    }
    labels.push_back(label);
  }
  return labels;
}

Graph BuiltinDataset(Dataset which) {
  std::string_view edges_text;
  std::string_view labels_text;
  switch (which) {
    case Dataset::kKarate:
      edges_text = internal::KarateEdges();
      labels_text = internal::KarateLabels();
      break;
    case Dataset::kDolphin:
      edges_text = internal::DolphinEdges();
      labels_text = internal::DolphinLabels();
      break;
  }
  // The bundled files are validated by the test suite.
  Graph g = *LoadEdgeList(edges_text);
  return *g.WithLabels(*LoadLabels(labels_text));
}

std::optional<Dataset> DatasetFromName(std::string_view name) {
  const std::string lower = absl::AsciiStrToLower(AbslView(name));
  if (lower == "karate") return Dataset::kKarate;
  if (lower == "dolphin" || lower == "dolphins") return Dataset::kDolphin;
  return std::nullopt;
}

std::string_view DatasetName(Dataset which) {
  return which == Dataset::kKarate ? "karate" : "dolphin";
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace agssl
