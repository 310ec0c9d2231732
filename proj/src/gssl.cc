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

#include "agssl/gssl.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "absl/strings/str_cat.h"

namespace agssl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// True when `candidate` beats `incumbent` by more than the tie tolerance.
// Candidates are visited in increasing node order, so near-ties keep the
// lowest index.
bool StrictlyLess(double candidate, double incumbent, double tie_rel_tol) {
  if (std::isinf(incumbent)) return !std::isinf(candidate) || candidate < incumbent;
  if (std::isinf(candidate)) return false;
  const double scale = std::max(std::abs(candidate), std::abs(incumbent));
  return candidate < incumbent - tie_rel_tol * scale;
}

bool StrictlyGreater(double candidate, double incumbent, double tie_rel_tol) {
  return StrictlyLess(-candidate, -incumbent, tie_rel_tol);
}

absl::Status CheckNoiseVar(double noise_var) {
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "noise variance must be positive and finite, got ", noise_var));
  }
  return absl::OkStatus();
}

absl::Status CheckShapes(const Regularizer& reg, const MeasurementMatrix& c) {
  if (c.num_cols() != reg.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "measurement matrix has ", c.num_cols(),
        " columns but the regularizer has size ", reg.size()));
  }
  return absl::OkStatus();
}

absl::Status CheckSet(const MeasurementMatrix& c, std::span<const int> s_set) {
  std::vector<bool> seen(c.num_rows(), false);
  for (int v : s_set) {
    if (v < 0 || v >= c.num_rows()) {
      return absl::OutOfRangeError(absl::StrCat(
          "sample index ", v, " outside [0, ", c.num_rows(), ")"));
    }
    if (seen[v]) {
      return absl::InvalidArgumentError(
          absl::StrCat("sample index ", v, " repeated"));
    }
    seen[v] = true;
  }
  return absl::OkStatus();
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

MeasurementMatrix MeasurementMatrix::Identity(int n) {
  return MeasurementMatrix(n, n, true, Eigen::MatrixXd());
}

absl::StatusOr<MeasurementMatrix> MeasurementMatrix::FromRows(
    const Eigen::MatrixXd& rows) {
  if (rows.rows() == 0 || rows.cols() == 0) {
    return absl::InvalidArgumentError("measurement matrix is empty");
  }
  for (int v = 0; v < rows.rows(); ++v) {
    if (rows.row(v).squaredNorm() == 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("measurement row ", v, " is zero"));
    }
  }
  const bool identity =
      rows.rows() == rows.cols() &&
      rows == Eigen::MatrixXd::Identity(rows.rows(), rows.cols());
  return MeasurementMatrix(static_cast<int>(rows.rows()),
                           static_cast<int>(rows.cols()), identity,
                           identity ? Eigen::MatrixXd() : rows);
}

Eigen::VectorXd MeasurementMatrix::Row(int v) const {
  if (is_identity_) return Eigen::VectorXd::Unit(num_cols_, v);
  return rows_.row(v).transpose();
}

Eigen::VectorXd MeasurementMatrix::ApplyTo(const SymMatrix& sigma,
                                           int v) const {
  if (is_identity_) return sigma.col(v);
  return sigma.dense() * rows_.row(v).transpose();
}

double MeasurementMatrix::Quadratic(const SymMatrix& sigma, int v) const {
  if (is_identity_) return sigma(v, v);
  const Eigen::VectorXd row = rows_.row(v).transpose();
  return row.dot(sigma.dense() * row);
}

void MeasurementMatrix::AddGram(int v, double scale, SymMatrix& m) const {
  if (is_identity_) {
    m.AddToDiagonal(v, scale);
  } else {
    m.AddOuterProduct(rows_.row(v).transpose(), scale);
  }
}

absl::Status MeasurementMatrix::CheckCompatible(
    const Regularizer& reg, const NumericPolicy& policy) const {
  if (reg.nullity() == 0) return absl::OkStatus();
  if (reg.nullity() > 1 || !reg.null_vector().has_value()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "regularizer has nullity ", reg.nullity(),
        "; a single sample cannot make the posterior proper"));
  }
  const Eigen::VectorXd& z = *reg.null_vector();
  for (int v = 0; v < num_rows_; ++v) {
    const Eigen::VectorXd row = Row(v);
    if (std::abs(row.dot(z)) <= policy.psd_rel_tol * row.norm()) {
      return absl::FailedPreconditionError(absl::StrCat(
          "measurement row ", v,
          " is orthogonal to the regularizer's null space; Omega({", v,
          "}) is singular"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<SymMatrix> PrecisionMatrix(const Regularizer& reg,
                                          const MeasurementMatrix& c,
                                          std::span<const int> s_set,
                                          double noise_var) {
  if (absl::Status s = CheckNoiseVar(noise_var); !s.ok()) return s;
  if (absl::Status s = CheckShapes(reg, c); !s.ok()) return s;
  if (absl::Status s = CheckSet(c, s_set); !s.ok()) return s;
  SymMatrix omega = reg.matrix();
  for (int v : s_set) c.AddGram(v, 1.0 / noise_var, omega);
  return omega;
}

absl::StatusOr<double> Objective(const Regularizer& reg,
                                 const MeasurementMatrix& c,
                                 std::span<const int> s_set, double noise_var,
                                 const NumericPolicy& policy) {
  absl::StatusOr<SymMatrix> omega = PrecisionMatrix(reg, c, s_set, noise_var);
  if (!omega.ok()) return omega.status();
  return TraceInverse(*omega, policy);
}

absl::StatusOr<SamplerState> MakeState(const Regularizer& reg,
                                       const MeasurementMatrix& c,
                                       std::span<const int> s_set,
                                       double noise_var,
                                       const NumericPolicy& policy) {
  absl::StatusOr<SymMatrix> omega = PrecisionMatrix(reg, c, s_set, noise_var);
  if (!omega.ok()) return omega.status();
  SamplerState state;
  state.selected.assign(s_set.begin(), s_set.end());
  state.noise_var = noise_var;
  absl::StatusOr<Cholesky> chol = Cholesky::Factor(*omega, policy);
  if (chol.ok()) {
    state.sigma = chol->Inverse();
    state.objective = state.sigma->trace();
  } else {
    state.objective = kInf;
  }
  return state;
}

absl::StatusOr<double> MarginalDecrease(const SamplerState& state,
                                        const MeasurementMatrix& c, int v) {
  if (v < 0 || v >= c.num_rows()) {
    return absl::OutOfRangeError(
        absl::StrCat("node ", v, " outside [0, ", c.num_rows(), ")"));
  }
  if (std::find(state.selected.begin(), state.selected.end(), v) !=
      state.selected.end()) {
    return absl::FailedPreconditionError(
        absl::StrCat("node ", v, " is already selected"));
  }
  if (!state.sigma.has_value()) return kInf;
  const Eigen::VectorXd col = c.ApplyTo(*state.sigma, v);
  return col.squaredNorm() / (state.noise_var + c.Quadratic(*state.sigma, v));
}

absl::StatusOr<SampleResult> GreedySample(const Regularizer& reg,
                                          const MeasurementMatrix& c,
                                          double noise_var, int budget,
                                          const NumericPolicy& policy,
                                          const StepObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  if (absl::Status s = CheckNoiseVar(noise_var); !s.ok()) return s;
  if (absl::Status s = CheckShapes(reg, c); !s.ok()) return s;
  const int m = c.num_rows();
  if (budget < 1 || budget > m) {
    return absl::OutOfRangeError(
        absl::StrCat("budget ", budget, " outside [1, ", m, "]"));
  }
  if (absl::Status s = c.CheckCompatible(reg, policy); !s.ok()) return s;

  SampleResult result;
  result.general_measurement_warning = !c.is_identity();
  SamplerState& state = result.state;
  state.noise_var = noise_var;
  state.objective = kInf;
  if (reg.nullity() == 0) {
    absl::StatusOr<Cholesky> chol = Cholesky::Factor(reg.matrix(), policy);
    if (chol.ok()) {
      state.sigma = chol->Inverse();
      state.objective = state.sigma->trace();
    }
  }
  std::vector<bool> taken(m, false);

  for (int step = 0; step < budget; ++step) {
    int best = -1;
    double best_objective = kInf;
    double best_decrease = -kInf;

    if (!state.sigma.has_value()) {
      // Sigma(S) does not exist yet: score each candidate by factorizing
      // Omega(S + v) directly.
      for (int v = 0; v < m; ++v) {
        if (taken[v]) continue;
        SymMatrix omega = reg.matrix();
        for (int u : state.selected) c.AddGram(u, 1.0 / noise_var, omega);
        c.AddGram(v, 1.0 / noise_var, omega);
        const double f = TraceInverse(omega, policy);
        if (!std::isinf(f) &&
            (best < 0 || StrictlyLess(f, best_objective, policy.tie_rel_tol))) {
          best = v;
          best_objective = f;
        }
      }
      if (best < 0) {
        return absl::FailedPreconditionError(
            "Omega(S + v) is singular for every candidate v; the prior "
            "cannot be made proper by one more sample");
      }
      state.selected.push_back(best);
      absl::StatusOr<SamplerState> rebuilt =
          MakeState(reg, c, state.selected, noise_var, policy);
      if (!rebuilt.ok()) return rebuilt.status();
      state.sigma = std::move(rebuilt->sigma);
      best_decrease = kInf;
      state.objective = state.sigma.has_value() ? state.sigma->trace() : kInf;
    } else {
      for (int v = 0; v < m; ++v) {
        if (taken[v]) continue;
        const Eigen::VectorXd col = c.ApplyTo(*state.sigma, v);
        const double delta =
            col.squaredNorm() / (noise_var + c.Quadratic(*state.sigma, v));
        if (best < 0 ||
            StrictlyGreater(delta, best_decrease, policy.tie_rel_tol)) {
          best = v;
          best_decrease = delta;
        }
      }
      absl::StatusOr<SymMatrix> updated =
          RankOneInverseUpdate(*state.sigma, c.Row(best), noise_var);
      if (!updated.ok()) return updated.status();
      state.sigma = *std::move(updated);
      state.selected.push_back(best);
      state.objective = state.sigma->trace();
    }
    taken[best] = true;
    result.per_step.push_back({best, state.objective, best_decrease});
    if (observer) observer(state);
  }
  result.wall_time_s = Seconds(start);
  return result;
}

absl::StatusOr<std::vector<int>> RandomSample(int n, int budget,
                                              uint64_t seed) {
  if (n < 0 || budget < 0 || budget > n) {
    return absl::OutOfRangeError(absl::StrCat(
        "cannot draw ", budget, " distinct nodes out of ", n));
  }
  std::vector<int> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates.
  for (int i = 0; i < budget; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(nodes[i], nodes[pick(rng)]);
  }
  nodes.resize(budget);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

absl::StatusOr<ExhaustiveResult> ExhaustiveOptimal(
    const Regularizer& reg, const MeasurementMatrix& c, double noise_var,
    int budget, const NumericPolicy& policy) {
  if (absl::Status s = CheckNoiseVar(noise_var); !s.ok()) return s;
  if (absl::Status s = CheckShapes(reg, c); !s.ok()) return s;
  const int m = c.num_rows();
  if (budget < 1 || budget > m) {
    return absl::OutOfRangeError(
        absl::StrCat("budget ", budget, " outside [1, ", m, "]"));
  }
  double subsets = 1.0;
  for (int i = 0; i < budget; ++i) {
    subsets = subsets * (m - i) / (i + 1);
  }
  if (subsets > kMaxExhaustiveSubsets) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "exhaustive search over ", subsets, " subsets exceeds the limit of ",
        kMaxExhaustiveSubsets));
  }

  ExhaustiveResult best{{}, kInf};
  std::vector<int> combo(budget);
  std::iota(combo.begin(), combo.end(), 0);
  while (true) {
    SymMatrix omega = reg.matrix();
    for (int v : combo) c.AddGram(v, 1.0 / noise_var, omega);
    const double f = TraceInverse(omega, policy);
    if (best.selected.empty() ||
        StrictlyLess(f, best.objective, policy.tie_rel_tol)) {
      best.selected = combo;
      best.objective = f;
    }
    // Next combination in lexicographic order.
    int i = budget - 1;
    while (i >= 0 && combo[i] == m - budget + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < budget; ++j) combo[j] = combo[j - 1] + 1;
  }
  return best;
}

absl::StatusOr<Eigen::VectorXd> PosteriorMean(
    const SamplerState& state, const MeasurementMatrix& c,
    const Eigen::Ref<const Eigen::VectorXd>& y_s) {
  if (state.selected.empty()) {
    return absl::FailedPreconditionError(
        "no samples selected; there is no predictor");
  }
  if (!state.sigma.has_value()) {
    return absl::FailedPreconditionError(
        "posterior covariance is undefined for this sample set");
  }
  if (y_s.size() != static_cast<Eigen::Index>(state.selected.size())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "got ", y_s.size(), " observations for ", state.selected.size(),
        " samples"));
  }
  // C_S^T y_S, then one product with Sigma.
  Eigen::VectorXd back = Eigen::VectorXd::Zero(c.num_cols());
  for (size_t k = 0; k < state.selected.size(); ++k) {
    const int v = state.selected[k];
    if (c.is_identity()) {
      back(v) += y_s(k);
    } else {
      back += y_s(k) * c.Row(v);
    }
  }
  return state.sigma->dense() * back / state.noise_var;
}

double GreedyBound(int budget) {
  if (budget <= 1) return 1.0;
  const double s = budget;
  return std::pow(1.0 - 1.0 / s, s - 1.0);
}

}  // namespace agssl
