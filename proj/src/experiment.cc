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

#include "agssl/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "agssl/format.h"
#include "agssl/gssl.h"
#include "json.hpp"

namespace agssl {

namespace {

using Json = nlohmann::ordered_json;

std::string DatasetLabel(const ExperimentConfig& config) {
  switch (config.dataset) {
    case DatasetSource::kKarate:
      return std::string(DatasetName(Dataset::kKarate));
    case DatasetSource::kDolphin:
      return std::string(DatasetName(Dataset::kDolphin));
    case DatasetSource::kFile:
      return config.edges_path;
  }
  return "";
}

absl::Status ValidateConfig(const ExperimentConfig& config, int n) {
  if (config.budgets.empty()) {
    return absl::InvalidArgumentError("no budgets given");
  }
  for (size_t i = 0; i < config.budgets.size(); ++i) {
    const int b = config.budgets[i];
    if (b < 1 || b > n) {
      return absl::OutOfRangeError(
          absl::StrCat("budget ", b, " outside [1, ", n, "]"));
    }
    if (i > 0 && b <= config.budgets[i - 1]) {
      return absl::InvalidArgumentError(
          "budgets must be strictly ascending");
    }
  }
  if (config.trials < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("trials must be at least 1, got ", config.trials));
  }
  if (config.noise_policy == NoisePolicy::kFixed &&
      !(config.fixed_noise_var > 0.0 && std::isfinite(config.fixed_noise_var))) {
    return absl::InvalidArgumentError("fixed noise variance must be positive");
  }
  return absl::OkStatus();
}

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string_view SamplerKindName(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kGreedy:
      return "greedy";
    case SamplerKind::kRandom:
      return "random";
  }
  return "unknown";
}

absl::StatusOr<Regularizer> MakeRegularizer(const Graph& g,
                                            RegularizerKind kind) {
  switch (kind) {
    case RegularizerKind::kUnnormalizedLaplacian:
      return Laplacian(g);
    case RegularizerKind::kNormalizedLaplacian:
      return NormalizedLaplacian(g);
    case RegularizerKind::kCustom:
      break;
  }
  return absl::InvalidArgumentError(
      "only L and Ln regularizers can be built from a graph");
}

double NoiseVariance(const Regularizer& reg, NoisePolicy policy,
                     double fixed_noise_var) {
  if (policy == NoisePolicy::kFixed) return fixed_noise_var;
  return 1.0 / reg.matrix().trace();
}

absl::StatusOr<Eigen::VectorXd> AddLabelNoise(
    const Eigen::Ref<const Eigen::VectorXd>& labels, double noise_var,
    uint64_t seed) {
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "noise variance must be positive and finite, got ", noise_var));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(noise_var));
  Eigen::VectorXd y = labels;
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += gauss(rng);
  return y;
}

std::vector<int> Classify(const Eigen::Ref<const Eigen::VectorXd>& x_hat) {
  std::vector<int> out(x_hat.size());
  for (Eigen::Index i = 0; i < x_hat.size(); ++i) {
    out[i] = x_hat(i) < 0.0 ? -1 : 1;
  }
  return out;
}

absl::StatusOr<double> Accuracy(std::span<const int> predicted,
                                std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("length mismatch: ", predicted.size(), " predictions, ",
                     truth.size(), " labels"));
  }
  if (truth.empty()) return absl::InvalidArgumentError("no labels");
  int hits = 0;
  for (size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
  return static_cast<double>(hits) / truth.size();
}

absl::StatusOr<double> OverlapFraction(std::span<const int> s1,
                                       std::span<const int> s2) {
  if (s1.empty() || s1.size() != s2.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "overlap needs two non-empty sets of equal size, got ", s1.size(),
        " and ", s2.size()));
  }
  const std::set<int> a(s1.begin(), s1.end());
  const std::set<int> b(s2.begin(), s2.end());
  if (a.size() != s1.size() || b.size() != s2.size()) {
    return absl::InvalidArgumentError("node sets contain repeated entries");
  }
  int common = 0;
  for (int v : a) common += b.count(v);
  return 100.0 * common / s1.size();
}

uint64_t DeriveSeed(uint64_t seed, uint64_t stream) {
  // splitmix64 finalizer over a golden-ratio combination.
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

absl::StatusOr<Graph> LoadExperimentGraph(const ExperimentConfig& config) {
  switch (config.dataset) {
    case DatasetSource::kKarate:
      return BuiltinDataset(Dataset::kKarate);
    case DatasetSource::kDolphin:
      return BuiltinDataset(Dataset::kDolphin);
    case DatasetSource::kFile:
      break;
  }
  absl::StatusOr<std::string> edges = ReadFile(config.edges_path);
  if (!edges.ok()) return edges.status();
  absl::StatusOr<Graph> g =
      LoadEdgeList(*edges, std::nullopt, config.one_indexed);
  if (!g.ok()) return g.status();
  if (config.labels_path.empty()) return g;
  absl::StatusOr<std::string> label_text = ReadFile(config.labels_path);
  if (!label_text.ok()) return label_text.status();
  absl::StatusOr<std::vector<int>> labels = LoadLabels(*label_text);
  if (!labels.ok()) return labels.status();
  return g->WithLabels(*std::move(labels));
}

absl::StatusOr<std::vector<RunRecord>> Sweep(const ExperimentConfig& config) {
  absl::StatusOr<Graph> g = LoadExperimentGraph(config);
  if (!g.ok()) return g.status();
  if (!g->labels().has_value()) {
    return absl::FailedPreconditionError(
        "the dataset has no ground-truth labels");
  }
  const int n = g->num_nodes();
  if (absl::Status s = ValidateConfig(config, n); !s.ok()) return s;
  absl::StatusOr<Regularizer> reg = MakeRegularizer(*g, config.regularizer);
  if (!reg.ok()) return reg.status();
  const double noise_var =
      NoiseVariance(*reg, config.noise_policy, config.fixed_noise_var);
  const MeasurementMatrix c = MeasurementMatrix::Identity(n);
  const std::vector<int>& truth = *g->labels();

  std::vector<RunRecord> records;
  for (int budget : config.budgets) {
    for (int trial = 0; trial < config.trials; ++trial) {
      const auto start = std::chrono::steady_clock::now();
      const uint64_t trial_seed = DeriveSeed(config.seed, trial);
      SamplerState state;
      if (config.sampler == SamplerKind::kGreedy) {
        absl::StatusOr<SampleResult> result =
            GreedySample(*reg, c, noise_var, budget);
        if (!result.ok()) return result.status();
        state = std::move(result->state);
      } else {
        absl::StatusOr<std::vector<int>> chosen =
            RandomSample(n, budget, DeriveSeed(trial_seed, 2 * budget));
        if (!chosen.ok()) return chosen.status();
        absl::StatusOr<SamplerState> made =
            MakeState(*reg, c, *chosen, noise_var);
        if (!made.ok()) return made.status();
        state = *std::move(made);
      }

      Eigen::VectorXd y(budget);
      for (int k = 0; k < budget; ++k) y(k) = truth[state.selected[k]];
      if (config.noisy) {
        absl::StatusOr<Eigen::VectorXd> noisy =
            AddLabelNoise(y, noise_var, DeriveSeed(trial_seed, 2 * budget + 1));
        if (!noisy.ok()) return noisy.status();
        y = *std::move(noisy);
      }
      absl::StatusOr<Eigen::VectorXd> x_hat = PosteriorMean(state, c, y);
      if (!x_hat.ok()) return x_hat.status();
      absl::StatusOr<double> acc = Accuracy(Classify(*x_hat), truth);
      if (!acc.ok()) return acc.status();

      RunRecord rec;
      rec.dataset = DatasetLabel(config);
      rec.regularizer = std::string(RegularizerKindName(config.regularizer));
      rec.sampler = std::string(SamplerKindName(config.sampler));
      rec.budget = budget;
      rec.trial = trial;
      rec.seed = config.seed;
      rec.loss = state.objective;
      rec.accuracy = *acc;
      rec.selected = std::move(state.selected);
      rec.noisy = config.noisy;
      if (config.record_timing) {
        rec.wall_time_s = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::vector<RunRecord> Summarize(std::span<const RunRecord> records) {
  std::vector<RunRecord> out;
  std::vector<int> counts;
  for (const RunRecord& r : records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const RunRecord& s) {
      return s.budget == r.budget && s.dataset == r.dataset &&
             s.regularizer == r.regularizer && s.sampler == r.sampler;
    });
    if (it == out.end()) {
      RunRecord s = r;
      s.trial = -1;
      s.selected.clear();
      out.push_back(std::move(s));
      counts.push_back(1);
      continue;
    }
    const size_t k = it - out.begin();
    it->loss += r.loss;
    it->accuracy += r.accuracy;
    it->wall_time_s += r.wall_time_s;
    ++counts[k];
  }
  for (size_t k = 0; k < out.size(); ++k) {
    out[k].loss /= counts[k];
    out[k].accuracy /= counts[k];
    out[k].wall_time_s /= counts[k];
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RunRecord& a, const RunRecord& b) {
                     return a.budget < b.budget;
                   });
  return out;
}

void WriteCsv(std::span<const RunRecord> records, std::ostream& out) {
  out << "dataset,regularizer,sampler,budget,trial,seed,loss,accuracy,"
         "selected_nodes,wall_time_s,noisy\n";
  for (const RunRecord& r : records) {
    out << CsvField(r.dataset) << ',' << r.regularizer << ',' << r.sampler
        << ',' << r.budget << ',' << r.trial << ',' << r.seed << ','
        << FormatDouble(r.loss) << ',' << FormatDouble(r.accuracy) << ','
        << JoinInts(r.selected, ";") << ',' << FormatDouble(r.wall_time_s)
        << ',' << (r.noisy ? "true" : "false") << '\n';
  }
}

void WriteJsonl(std::span<const RunRecord> records, std::ostream& out) {
  for (const RunRecord& r : records) {
    Json j;
    j["dataset"] = r.dataset;
    j["regularizer"] = r.regularizer;
    j["sampler"] = r.sampler;
    j["budget"] = r.budget;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["loss"] = r.loss;
    j["accuracy"] = r.accuracy;
    j["selected_nodes"] = r.selected;
    j["wall_time_s"] = r.wall_time_s;
    j["noisy"] = r.noisy;
    out << j.dump() << '\n';
  }
}

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(std::string_view text) {
  const Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("config is not a JSON object");
  }
  ExperimentConfig config;
  for (const auto& [key, value] : j.items()) {
    if (key == "dataset") {
      if (value.is_string()) {
        const std::optional<Dataset> d =
            DatasetFromName(value.get<std::string>());
        if (!d.has_value()) {
          return absl::InvalidArgumentError(absl::StrCat(
              "unknown dataset \"", value.get<std::string>(), "\""));
        }
        config.dataset = *d == Dataset::kKarate ? DatasetSource::kKarate
                                                : DatasetSource::kDolphin;
      } else if (value.is_object() && value.contains("edges") &&
                 value["edges"].is_string()) {
        config.dataset = DatasetSource::kFile;
        config.edges_path = value["edges"].get<std::string>();
        if (value.contains("labels")) {
          if (!value["labels"].is_string()) {
            return absl::InvalidArgumentError("dataset.labels must be a path");
          }
          config.labels_path = value["labels"].get<std::string>();
        }
        if (value.contains("one_indexed")) {
          if (!value["one_indexed"].is_boolean()) {
            return absl::InvalidArgumentError(
                "dataset.one_indexed must be a boolean");
          }
          config.one_indexed = value["one_indexed"].get<bool>();
        }
      } else {
        return absl::InvalidArgumentError(
            "dataset must be a builtin name or {\"edges\": path, ...}");
      }
    } else if (key == "regularizer") {
      const std::string r = value.is_string() ? value.get<std::string>() : "";
      if (r == "L") {
        config.regularizer = RegularizerKind::kUnnormalizedLaplacian;
      } else if (r == "Ln" || r == "L_N") {
        config.regularizer = RegularizerKind::kNormalizedLaplacian;
      } else {
        return absl::InvalidArgumentError("regularizer must be \"L\" or \"Ln\"");
      }
    } else if (key == "sigma2") {
      if (value.is_string() && value.get<std::string>() == "trace") {
        config.noise_policy = NoisePolicy::kTraceReciprocal;
      } else if (value.is_number() && value.get<double>() > 0.0) {
        config.noise_policy = NoisePolicy::kFixed;
        config.fixed_noise_var = value.get<double>();
      } else {
        return absl::InvalidArgumentError(
            "sigma2 must be \"trace\" or a positive number");
      }
    } else if (key == "budgets") {
      if (!value.is_array()) {
        return absl::InvalidArgumentError("budgets must be an array");
      }
      for (const Json& b : value) {
        if (!b.is_number_integer()) {
          return absl::InvalidArgumentError("budgets must be integers");
        }
        config.budgets.push_back(b.get<int>());
      }
    } else if (key == "sampler") {
      const std::string s = value.is_string() ? value.get<std::string>() : "";
      if (s == "greedy") {
        config.sampler = SamplerKind::kGreedy;
      } else if (s == "random") {
        config.sampler = SamplerKind::kRandom;
      } else {
        return absl::InvalidArgumentError(
            "sampler must be \"greedy\" or \"random\"");
      }
    } else if (key == "trials") {
      if (!value.is_number_integer() || value.get<int>() < 1) {
        return absl::InvalidArgumentError("trials must be a positive integer");
      }
      config.trials = value.get<int>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        return absl::InvalidArgumentError(
            "seed must be a non-negative integer");
      }
      config.seed = value.get<uint64_t>();
    } else if (key == "noisy" || key == "record_timing") {
      if (!value.is_boolean()) {
        return absl::InvalidArgumentError(
            absl::StrCat(key, " must be a boolean"));
      }
      (key == "noisy" ? config.noisy : config.record_timing) =
          value.get<bool>();
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown config key \"", key, "\""));
    }
  }
  if (config.budgets.empty()) {
    return absl::InvalidArgumentError("config needs a non-empty budgets list");
  }
  for (size_t i = 1; i < config.budgets.size(); ++i) {
    if (config.budgets[i] <= config.budgets[i - 1]) {
      return absl::InvalidArgumentError("budgets must be strictly ascending");
    }
  }
  if (config.budgets.front() < 1) {
    return absl::InvalidArgumentError("budgets must be at least 1");
  }
  return config;
}

}  // namespace agssl
