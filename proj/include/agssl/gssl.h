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

// Active label selection under a Gaussian prior with Stieltjes precision.
//
// With prior precision Omega0, measurement rows C_v and noise variance s2,
// observing a set S gives the posterior precision
//
//   Omega(S) = Omega0 + C_S^T C_S / s2,      Sigma(S) = Omega(S)^-1,
//
// and the sampling loss f(S) = tr Sigma(S) (+infinity when Omega(S) is
// singular). Adding node v lowers f by
//
//   delta_v(S) = ||Sigma(S) C_v^T||^2 / (s2 + C_v Sigma(S) C_v^T),
//
// and Sigma is carried from step to step with a rank-one downdate. For
// C = I and Stieltjes Omega0, f is non-increasing and supermodular, so the
// greedy set is within (1 - 1/s)^(s-1) of optimal relative to the best
// singleton.

#ifndef AGSSL_GSSL_H_
#define AGSSL_GSSL_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "agssl/graph.h"
#include "agssl/linalg.h"
#include "agssl/numeric_policy.h"

namespace agssl {

// The m x n observation operator C. Row v is what sampling "node" v
// measures; the identity operator measures node values directly.
class MeasurementMatrix {
 public:
  static MeasurementMatrix Identity(int n);
  // Rows of `rows` are the measurement vectors. No row may be zero.
  static absl::StatusOr<MeasurementMatrix> FromRows(const Eigen::MatrixXd& rows);

  int num_rows() const { return num_rows_; }
  int num_cols() const { return num_cols_; }
  bool is_identity() const { return is_identity_; }

  Eigen::VectorXd Row(int v) const;
  // Sigma C_v^T. For the identity this is a column of Sigma.
  Eigen::VectorXd ApplyTo(const SymMatrix& sigma, int v) const;
  // C_v Sigma C_v^T.
  double Quadratic(const SymMatrix& sigma, int v) const;
  // m += scale * C_v^T C_v.
  void AddGram(int v, double scale, SymMatrix& m) const;

  // Every row must see the regularizer's null direction, otherwise
  // Omega({v}) stays singular.
  absl::Status CheckCompatible(const Regularizer& reg,
                               const NumericPolicy& policy = DefaultPolicy()) const;

 private:
  MeasurementMatrix(int num_rows, int num_cols, bool is_identity,
                    Eigen::MatrixXd rows)
      : num_rows_(num_rows),
        num_cols_(num_cols),
        is_identity_(is_identity),
        rows_(std::move(rows)) {}

  int num_rows_ = 0;
  int num_cols_ = 0;
  bool is_identity_ = true;
  Eigen::MatrixXd rows_;  // empty for the identity
};

struct SamplerState {
  std::vector<int> selected;          // in selection order
  std::optional<SymMatrix> sigma;     // absent while Omega(S) is singular
  double objective = 0.0;             // f(S); +infinity without sigma
  double noise_var = 1.0;
};

struct SampleStep {
  int node = 0;
  double objective = 0.0;  // f after the choice
  double decrease = 0.0;   // delta of the chosen node; +infinity on step one
                           // when Omega0 is singular
};

struct SampleResult {
  SamplerState state;
  std::vector<SampleStep> per_step;
  double wall_time_s = 0.0;
  // Set when C is not the identity: the greedy guarantee does not apply.
  bool general_measurement_warning = false;
};

// Omega(S) = Omega0 + C_S^T C_S / noise_var.
absl::StatusOr<SymMatrix> PrecisionMatrix(const Regularizer& reg,
                                          const MeasurementMatrix& c,
                                          std::span<const int> s_set,
                                          double noise_var);

// f(S) by direct factorization; +infinity when Omega(S) is singular.
absl::StatusOr<double> Objective(const Regularizer& reg,
                                 const MeasurementMatrix& c,
                                 std::span<const int> s_set, double noise_var,
                                 const NumericPolicy& policy = DefaultPolicy());

// Builds the state for a given set by direct factorization.
absl::StatusOr<SamplerState> MakeState(
    const Regularizer& reg, const MeasurementMatrix& c,
    std::span<const int> s_set, double noise_var,
    const NumericPolicy& policy = DefaultPolicy());

// delta_v(S); +infinity when the state has no sigma. O(n) for the identity.
absl::StatusOr<double> MarginalDecrease(const SamplerState& state,
                                        const MeasurementMatrix& c, int v);

// Called with the state after every greedy step.
using StepObserver = std::function<void(const SamplerState&)>;

absl::StatusOr<SampleResult> GreedySample(
    const Regularizer& reg, const MeasurementMatrix& c, double noise_var,
    int budget, const NumericPolicy& policy = DefaultPolicy(),
    const StepObserver& observer = nullptr);

// Uniform random subset of {0..n-1} of size budget, sorted. Deterministic
// per seed.
absl::StatusOr<std::vector<int>> RandomSample(int n, int budget,
                                              uint64_t seed);

struct ExhaustiveResult {
  std::vector<int> selected;  // ascending
  double objective = 0.0;
};

inline constexpr double kMaxExhaustiveSubsets = 2e6;

// Exact minimizer of f over all subsets of the given size. Ties go to the
// lexicographically first subset.
absl::StatusOr<ExhaustiveResult> ExhaustiveOptimal(
    const Regularizer& reg, const MeasurementMatrix& c, double noise_var,
    int budget, const NumericPolicy& policy = DefaultPolicy());

// x_hat = Sigma(S) C_S^T y_S / noise_var, with y_s ordered like
// state.selected.
absl::StatusOr<Eigen::VectorXd> PosteriorMean(
    const SamplerState& state, const MeasurementMatrix& c,
    const Eigen::Ref<const Eigen::VectorXd>& y_s);

// (1 - 1/s)^(s-1); 1 for s = 1.
double GreedyBound(int budget);

}  // namespace agssl

#endif  // AGSSL_GSSL_H_
