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

#include "agssl/linalg.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "Eigen/Eigenvalues"
#include "absl/strings/cord.h"
#include "absl/strings/str_cat.h"

namespace agssl {

namespace {

constexpr char kPivotPayloadUrl[] = "agssl/singular_pivot";

absl::Status SingularPivotError(int index, double pivot) {
  absl::Status status = absl::FailedPreconditionError(absl::StrCat(
      "matrix is singular or not positive definite: pivot ", pivot,
      " at index ", index));
  status.SetPayload(kPivotPayloadUrl, absl::Cord(std::to_string(index)));
  return status;
}

}  // namespace

SymMatrix SymMatrix::Zero(int n) {
  return SymMatrix(Eigen::MatrixXd::Zero(n, n));
}

SymMatrix SymMatrix::Identity(int n) {
  return SymMatrix(Eigen::MatrixXd::Identity(n, n));
}

absl::StatusOr<SymMatrix> SymMatrix::FromDense(const Eigen::MatrixXd& m,
                                               const NumericPolicy& policy) {
  if (m.rows() != m.cols()) {
    return absl::InvalidArgumentError(
        absl::StrCat("matrix is ", m.rows(), "x", m.cols(), ", not square"));
  }
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (m.size() > 0 && asym > policy.symmetry_tol) {
    return absl::InvalidArgumentError(
        absl::StrCat("matrix is not symmetric: max |A - A^T| = ", asym));
  }
  return Symmetrized(m);
}

SymMatrix SymMatrix::Symmetrized(const Eigen::MatrixXd& m) {
  return SymMatrix(0.5 * (m + m.transpose()));
}

void SymMatrix::AddOuterProduct(const Eigen::Ref<const Eigen::VectorXd>& v,
                                double scale) {
  const int n = size();
  for (int j = 0; j < n; ++j) {
    const double vj = scale * v(j);
    if (vj == 0.0) continue;
    for (int i = j; i < n; ++i) m_(i, j) += v(i) * vj;
  }
  m_.triangularView<Eigen::StrictlyUpper>() =
      m_.transpose().triangularView<Eigen::StrictlyUpper>();
}

absl::StatusOr<Cholesky> Cholesky::Factor(const SymMatrix& m,
                                          const NumericPolicy& policy) {
  const int n = m.size();
  const Eigen::MatrixXd& a = m.dense();
  const double max_diag = n > 0 ? a.diagonal().maxCoeff() : 0.0;
  const double threshold = policy.pivot_rel_tol * std::max(max_diag, 0.0);

  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double pivot = a(j, j) - l.row(j).head(j).squaredNorm();
    if (!(pivot > threshold)) return SingularPivotError(j, pivot);
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    if (j + 1 < n) {
      l.col(j).tail(n - j - 1) =
          (a.col(j).tail(n - j - 1) -
           l.bottomLeftCorner(n - j - 1, j) * l.row(j).head(j).transpose()) /
          ljj;
    }
  }
  return Cholesky(std::move(l));
}

Eigen::VectorXd Cholesky::Solve(
    const Eigen::Ref<const Eigen::VectorXd>& rhs) const {
  Eigen::VectorXd y = l_.triangularView<Eigen::Lower>().solve(rhs);
  return l_.transpose().triangularView<Eigen::Upper>().solve(y);
}

Eigen::MatrixXd Cholesky::SolveMany(
    const Eigen::Ref<const Eigen::MatrixXd>& rhs) const {
  Eigen::MatrixXd y = l_.triangularView<Eigen::Lower>().solve(rhs);
  return l_.transpose().triangularView<Eigen::Upper>().solve(y);
}

SymMatrix Cholesky::Inverse() const {
  const int n = size();
  Eigen::MatrixXd linv = l_.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(n, n));
  // A^-1 = L^-T L^-1; only the lower-triangular part of L^-1 is non-zero.
  return SymMatrix::Symmetrized(linv.transpose() * linv);
}

double Cholesky::TraceOfInverse() const {
  const int n = size();
  Eigen::MatrixXd linv = l_.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(n, n));
  return linv.squaredNorm();
}

std::optional<int> SingularPivotIndex(const absl::Status& status) {
  absl::optional<absl::Cord> payload = status.GetPayload(kPivotPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  const std::string text(*payload);
  int index = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
  if (ec != std::errc()) return std::nullopt;
  return index;
}

absl::StatusOr<Eigen::VectorXd> CholeskySolve(
    const SymMatrix& m, const Eigen::Ref<const Eigen::VectorXd>& rhs,
    const NumericPolicy& policy) {
  if (rhs.size() != m.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "rhs has length ", rhs.size(), ", matrix has size ", m.size()));
  }
  absl::StatusOr<Cholesky> chol = Cholesky::Factor(m, policy);
  if (!chol.ok()) return chol.status();
  return chol->Solve(rhs);
}

absl::StatusOr<Eigen::MatrixXd> CholeskySolveMany(
    const SymMatrix& m, const Eigen::Ref<const Eigen::MatrixXd>& rhs,
    const NumericPolicy& policy) {
  if (rhs.rows() != m.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "rhs has ", rhs.rows(), " rows, matrix has size ", m.size()));
  }
  absl::StatusOr<Cholesky> chol = Cholesky::Factor(m, policy);
  if (!chol.ok()) return chol.status();
  return chol->SolveMany(rhs);
}

double TraceInverse(const SymMatrix& m, const NumericPolicy& policy) {
  absl::StatusOr<Cholesky> chol = Cholesky::Factor(m, policy);
  if (!chol.ok()) return std::numeric_limits<double>::infinity();
  return chol->TraceOfInverse();
}

absl::StatusOr<SymMatrix> RankOneInverseUpdate(
    const SymMatrix& sigma, const Eigen::Ref<const Eigen::VectorXd>& c,
    double noise_var) {
  if (c.size() != sigma.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "update vector has length ", c.size(), ", sigma has size ",
        sigma.size()));
  }
  if (!(noise_var > 0.0)) {
    return absl::InvalidArgumentError("noise variance must be positive");
  }
  const Eigen::VectorXd u = sigma.dense() * c;
  const double denom = noise_var + c.dot(u);
  if (!(denom > 0.0)) {
    return absl::InternalError(absl::StrCat(
        "rank-one update broke down: denominator ", denom));
  }
  SymMatrix out = sigma;
  out.AddOuterProduct(u, -1.0 / denom);
  return out;
}

StieltjesReport CheckStieltjes(const Eigen::MatrixXd& m, double tol) {
  StieltjesReport report;
  if (m.rows() != m.cols() || m.size() == 0) return report;
  const int n = static_cast<int>(m.rows());

  report.is_symmetric = (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
  report.max_offdiag = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i != j) report.max_offdiag = std::max(report.max_offdiag, m(i, j));
    }
  }
  if (n == 1) report.max_offdiag = 0.0;

  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym,
                                                     Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  report.min_eigenvalue = lambda.minCoeff();
  report.max_eigenvalue = lambda.maxCoeff();
  const double scale = std::max(report.max_eigenvalue, 0.0);
  for (int i = 0; i < n; ++i) {
    if (std::abs(lambda(i)) <= tol * scale) ++report.nullity;
  }
  report.verdict =
      report.is_symmetric && report.max_offdiag <= tol &&
      report.min_eigenvalue >= -tol * std::max(1.0, report.max_eigenvalue);
  return report;
}

}  // namespace agssl
