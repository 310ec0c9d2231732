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

// Dense symmetric linear algebra used by the samplers: a symmetric matrix
// type, a Cholesky factorization with scale-aware singularity detection,
// trace of the inverse, the rank-one inverse update and a Stieltjes checker.

#ifndef AGSSL_LINALG_H_
#define AGSSL_LINALG_H_

#include <optional>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "agssl/numeric_policy.h"

namespace agssl {

// Dense n x n matrix whose storage is always exactly symmetric. All mutators
// write both triangles.
class SymMatrix {
 public:
  SymMatrix() = default;

  static SymMatrix Zero(int n);
  static SymMatrix Identity(int n);

  // Fails if `m` is not square or is asymmetric beyond policy.symmetry_tol.
  // The accepted matrix is symmetrized as (m + m^T) / 2.
  static absl::StatusOr<SymMatrix> FromDense(
      const Eigen::MatrixXd& m, const NumericPolicy& policy = DefaultPolicy());
  // Unchecked (m + m^T) / 2 for square m.
  static SymMatrix Symmetrized(const Eigen::MatrixXd& m);

  int size() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXd& dense() const { return m_; }
  auto col(int j) const { return m_.col(j); }
  double trace() const { return m_.trace(); }

  void Set(int i, int j, double value) {
    m_(i, j) = value;
    m_(j, i) = value;
  }
  void AddToDiagonal(int i, double value) { m_(i, i) += value; }
  // this += scale * v v^T
  void AddOuterProduct(const Eigen::Ref<const Eigen::VectorXd>& v,
                       double scale);

 private:
  explicit SymMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}

  Eigen::MatrixXd m_;
};

// Lower-triangular Cholesky factor L with A = L L^T.
class Cholesky {
 public:
  // Fails with FailedPrecondition when a pivot is <= pivot_rel_tol times the
  // largest diagonal entry; the failing index is attached to the status and
  // can be read back with SingularPivotIndex().
  static absl::StatusOr<Cholesky> Factor(
      const SymMatrix& m, const NumericPolicy& policy = DefaultPolicy());

  int size() const { return static_cast<int>(l_.rows()); }
  const Eigen::MatrixXd& lower() const { return l_; }

  Eigen::VectorXd Solve(const Eigen::Ref<const Eigen::VectorXd>& rhs) const;
  // One solve per column of rhs.
  Eigen::MatrixXd SolveMany(const Eigen::Ref<const Eigen::MatrixXd>& rhs) const;

  SymMatrix Inverse() const;
  // tr(A^-1) = ||L^-1||_F^2.
  double TraceOfInverse() const;

 private:
  explicit Cholesky(Eigen::MatrixXd l) : l_(std::move(l)) {}

  Eigen::MatrixXd l_;
};

// Pivot index carried by a singularity error from Cholesky::Factor.
std::optional<int> SingularPivotIndex(const absl::Status& status);

// Solves m x = rhs for symmetric positive definite m.
absl::StatusOr<Eigen::VectorXd> CholeskySolve(
    const SymMatrix& m, const Eigen::Ref<const Eigen::VectorXd>& rhs,
    const NumericPolicy& policy = DefaultPolicy());
absl::StatusOr<Eigen::MatrixXd> CholeskySolveMany(
    const SymMatrix& m, const Eigen::Ref<const Eigen::MatrixXd>& rhs,
    const NumericPolicy& policy = DefaultPolicy());

// tr(m^-1), or +infinity when m is singular or not positive definite.
double TraceInverse(const SymMatrix& m,
                    const NumericPolicy& policy = DefaultPolicy());

// Sherman-Morrison downdate of a covariance:
//   sigma' = sigma - (sigma c)(sigma c)^T / (noise_var + c^T sigma c),
// which is (sigma^-1 + c c^T / noise_var)^-1.
absl::StatusOr<SymMatrix> RankOneInverseUpdate(
    const SymMatrix& sigma, const Eigen::Ref<const Eigen::VectorXd>& c,
    double noise_var);

struct StieltjesReport {
  bool is_symmetric = false;
  double max_offdiag = 0.0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  int nullity = 0;
  bool verdict = false;
};

// Symmetric, off-diagonal entries <= tol, and smallest eigenvalue
// >= -tol * max(1, largest eigenvalue). The nullity counts eigenvalues with
// |lambda| <= tol * (largest eigenvalue). Uses a full eigendecomposition, so
// keep it out of hot loops.
StieltjesReport CheckStieltjes(const Eigen::MatrixXd& m, double tol);
inline StieltjesReport CheckStieltjes(const SymMatrix& m, double tol) {
  return CheckStieltjes(m.dense(), tol);
}

}  // namespace agssl

#endif  // AGSSL_LINALG_H_
