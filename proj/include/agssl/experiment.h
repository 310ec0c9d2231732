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

// Community-detection experiments: sample a few nodes, observe their labels
// with Gaussian noise, predict the rest by the posterior mean and score the
// sign of the prediction.

#ifndef AGSSL_EXPERIMENT_H_
#define AGSSL_EXPERIMENT_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "agssl/graph.h"

namespace agssl {

enum class DatasetSource { kKarate, kDolphin, kFile };
enum class NoisePolicy { kTraceReciprocal, kFixed };
enum class SamplerKind { kGreedy, kRandom };

std::string_view SamplerKindName(SamplerKind kind);

struct ExperimentConfig {
  DatasetSource dataset = DatasetSource::kKarate;
  // Used with DatasetSource::kFile.
  std::string edges_path;
  std::string labels_path;
  bool one_indexed = false;

  RegularizerKind regularizer = RegularizerKind::kUnnormalizedLaplacian;
  NoisePolicy noise_policy = NoisePolicy::kTraceReciprocal;
  double fixed_noise_var = 1.0;  // used with NoisePolicy::kFixed

  std::vector<int> budgets;  // strictly ascending, each in [1, n]
  SamplerKind sampler = SamplerKind::kGreedy;
  // Random: independent sample sets. Greedy: independent noise draws on the
  // same set.
  int trials = 1;
  uint64_t seed = 0;
  // Add Gaussian noise of the policy's variance to the observed labels.
  bool noisy = true;
  // wall_time_s is 0 when false, which makes output byte-reproducible.
  bool record_timing = true;
};

struct RunRecord {
  std::string dataset;
  std::string regularizer;
  std::string sampler;
  int budget = 0;
  int trial = 0;  // -1 for a summary row
  uint64_t seed = 0;
  double loss = 0.0;
  double accuracy = 0.0;
  std::vector<int> selected;  // selection order; empty for a summary row
  double wall_time_s = 0.0;
  bool noisy = true;
};

// Builds L or L_N. Custom regularizers are not graph-derived.
absl::StatusOr<Regularizer> MakeRegularizer(const Graph& g,
                                            RegularizerKind kind);

// 1 / tr(Omega0), or the fixed value.
double NoiseVariance(const Regularizer& reg, NoisePolicy policy,
                     double fixed_noise_var);

// labels + N(0, noise_var) per entry; deterministic per seed.
absl::StatusOr<Eigen::VectorXd> AddLabelNoise(
    const Eigen::Ref<const Eigen::VectorXd>& labels, double noise_var,
    uint64_t seed);

// Entrywise sign, with exact zeros mapped to +1.
std::vector<int> Classify(const Eigen::Ref<const Eigen::VectorXd>& x_hat);

// Fraction of matching entries.
absl::StatusOr<double> Accuracy(std::span<const int> predicted,
                                std::span<const int> truth);

// 100 |s1 n s2| / |s1| for equal-size, non-empty node sets.
absl::StatusOr<double> OverlapFraction(std::span<const int> s1,
                                       std::span<const int> s2);

// Mixes two integers into a well-spread 64-bit seed.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

absl::StatusOr<Graph> LoadExperimentGraph(const ExperimentConfig& config);

// One record per (budget, trial), ordered by budget then trial. The noise on
// budget s of trial t is seeded from (seed, t, s), so records do not depend
// on which other budgets are in the config.
absl::StatusOr<std::vector<RunRecord>> Sweep(const ExperimentConfig& config);

// Mean loss, accuracy and wall time per budget, in budget order.
std::vector<RunRecord> Summarize(std::span<const RunRecord> records);

// Columns: dataset, regularizer, sampler, budget, trial, seed, loss,
// accuracy, selected_nodes (';'-joined), wall_time_s, noisy.
void WriteCsv(std::span<const RunRecord> records, std::ostream& out);
// One JSON object per line with the CSV fields; selected_nodes is an array.
void WriteJsonl(std::span<const RunRecord> records, std::ostream& out);

// Parses a JSON config, e.g.
//   {"dataset": "karate", "regularizer": "L", "sigma2": "trace",
//    "budgets": [1, 2, 3], "sampler": "random", "trials": 10, "seed": 7}
// A file dataset is {"edges": path, "labels": path, "one_indexed": false}.
absl::StatusOr<ExperimentConfig> ParseExperimentConfig(std::string_view json);

}  // namespace agssl

#endif  // AGSSL_EXPERIMENT_H_
