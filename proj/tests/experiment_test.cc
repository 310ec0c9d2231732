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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "agssl/gssl.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace agssl {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(AddLabelNoiseTest, VanishingNoiseKeepsLabels) {
  const Eigen::Vector3d labels(1, -1, 1);
  absl::StatusOr<Eigen::VectorXd> y = AddLabelNoise(labels, 1e-12, 5);
  ASSERT_TRUE(y.ok());
  EXPECT_LE((*y - labels).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(AddLabelNoiseTest, DeterministicPerSeed) {
  const Eigen::VectorXd labels = Eigen::VectorXd::Ones(20);
  EXPECT_EQ(*AddLabelNoise(labels, 0.3, 17), *AddLabelNoise(labels, 0.3, 17));
  EXPECT_NE(*AddLabelNoise(labels, 0.3, 17), *AddLabelNoise(labels, 0.3, 18));
}

TEST(AddLabelNoiseTest, SampleVarianceMatches) {
  const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(100000);
  const Eigen::VectorXd y = *AddLabelNoise(zeros, 0.25, 2026);
  const double mean = y.mean();
  const double var = (y.array() - mean).square().sum() / (y.size() - 1);
  EXPECT_NEAR(var, 0.25, 0.03 * 0.25);
  EXPECT_NEAR(mean, 0.0, 0.01);
}

TEST(AddLabelNoiseTest, RejectsNonPositiveVariance) {
  EXPECT_FALSE(AddLabelNoise(Eigen::VectorXd::Ones(2), 0.0, 1).ok());
  EXPECT_FALSE(AddLabelNoise(Eigen::VectorXd::Ones(2), -1.0, 1).ok());
}

TEST(ClassifyTest, Examples) {
  EXPECT_THAT(Classify(Eigen::Vector3d(0.3, -2, 1)), ElementsAre(1, -1, 1));
  EXPECT_THAT(Classify(Eigen::Vector3d::Zero()), ElementsAre(1, 1, 1));
  EXPECT_THAT(Classify(Eigen::Vector2d(-0.0, -1e-300)), ElementsAre(1, -1));
  const Eigen::Vector4d x(0.5, -0.1, 3, -7);
  for (double scale : {1e-8, 0.5, 3.0, 1e8}) {
    EXPECT_EQ(Classify(scale * x), Classify(x));
  }
}

TEST(AccuracyTest, Examples) {
  const std::vector<int> truth = {1, -1, 1, 1};
  EXPECT_EQ(*Accuracy(truth, truth), 1.0);
  EXPECT_EQ(*Accuracy(std::vector<int>{-1, 1, -1, -1}, truth), 0.0);
  std::vector<int> a(34, 1);
  std::vector<int> b = a;
  b[7] = -1;
  EXPECT_DOUBLE_EQ(*Accuracy(a, b), 33.0 / 34.0);
  EXPECT_FALSE(Accuracy(std::vector<int>{1}, truth).ok());
}

TEST(OverlapFractionTest, Examples) {
  const std::vector<int> s = {3, 1, 4};
  EXPECT_EQ(*OverlapFraction(s, s), 100.0);
  EXPECT_EQ(*OverlapFraction(s, std::vector<int>{0, 2, 5}), 0.0);
  const double four_of_six = *OverlapFraction(
      std::vector<int>{0, 1, 2, 3, 4, 5}, std::vector<int>{5, 4, 3, 2, 10, 11});
  EXPECT_EQ(std::round(four_of_six * 100) / 100, 66.67);
  EXPECT_FALSE(OverlapFraction({}, {}).ok());
  EXPECT_FALSE(OverlapFraction(s, std::vector<int>{1}).ok());
  EXPECT_FALSE(OverlapFraction(std::vector<int>{1, 1}, std::vector<int>{1, 2}).ok());
}

TEST(DeriveSeedTest, SpreadsNearbyInputs) {
  EXPECT_NE(DeriveSeed(0, 0), DeriveSeed(0, 1));
  EXPECT_NE(DeriveSeed(0, 1), DeriveSeed(1, 0));
  EXPECT_EQ(DeriveSeed(7, 3), DeriveSeed(7, 3));
}

ExperimentConfig GreedyConfig(DatasetSource d, RegularizerKind r,
                              std::vector<int> budgets) {
  ExperimentConfig config;
  config.dataset = d;
  config.regularizer = r;
  config.budgets = std::move(budgets);
  config.record_timing = false;
  return config;
}

TEST(SweepTest, KarateTwoGreedySamplesWithoutNoise) {
  ExperimentConfig config = GreedyConfig(
      DatasetSource::kKarate, RegularizerKind::kUnnormalizedLaplacian, {2});
  config.noisy = false;
  absl::StatusOr<std::vector<RunRecord>> records = Sweep(config);
  ASSERT_TRUE(records.ok()) << records.status();
  ASSERT_EQ(records->size(), 1u);
  EXPECT_EQ((*records)[0].accuracy, 1.0);
  EXPECT_EQ((*records)[0].selected.size(), 2u);
  EXPECT_EQ((*records)[0].dataset, "karate");
  EXPECT_EQ((*records)[0].regularizer, "L");
}

TEST(SweepTest, DolphinTwoGreedySamplesWithoutNoise) {
  ExperimentConfig config = GreedyConfig(
      DatasetSource::kDolphin, RegularizerKind::kUnnormalizedLaplacian, {2});
  config.noisy = false;
  absl::StatusOr<std::vector<RunRecord>> records = Sweep(config);
  ASSERT_TRUE(records.ok()) << records.status();
  EXPECT_EQ((*records)[0].accuracy, 1.0);
}

TEST(SweepTest, GreedyLossIsNonIncreasingInBudget) {
  for (DatasetSource d : {DatasetSource::kKarate, DatasetSource::kDolphin}) {
    for (RegularizerKind r : {RegularizerKind::kUnnormalizedLaplacian,
                              RegularizerKind::kNormalizedLaplacian}) {
      const std::vector<RunRecord> records =
          *Sweep(GreedyConfig(d, r, {1, 2, 3, 4, 5, 6, 8, 10, 15, 20}));
      for (size_t k = 1; k < records.size(); ++k) {
        EXPECT_LE(records[k].loss, records[k - 1].loss + 1e-9);
        EXPECT_TRUE(std::isfinite(records[k].loss));
        EXPECT_GE(records[k].accuracy, 0.0);
        EXPECT_LE(records[k].accuracy, 1.0);
      }
    }
  }
}

TEST(SweepTest, DeterministicReplay) {
  ExperimentConfig config = GreedyConfig(
      DatasetSource::kDolphin, RegularizerKind::kNormalizedLaplacian, {1, 3, 5});
  config.sampler = SamplerKind::kRandom;
  config.trials = 4;
  config.seed = 99;
  std::ostringstream csv1, csv2, jsonl1, jsonl2;
  const std::vector<RunRecord> a = *Sweep(config);
  const std::vector<RunRecord> b = *Sweep(config);
  WriteCsv(a, csv1);
  WriteCsv(b, csv2);
  WriteJsonl(a, jsonl1);
  WriteJsonl(b, jsonl2);
  EXPECT_EQ(csv1.str(), csv2.str());
  EXPECT_EQ(jsonl1.str(), jsonl2.str());

  config.seed = 100;
  std::ostringstream csv3;
  WriteCsv(*Sweep(config), csv3);
  EXPECT_NE(csv1.str(), csv3.str());
}

TEST(SweepTest, RecordsDoNotDependOnOtherBudgets) {
  ExperimentConfig one = GreedyConfig(
      DatasetSource::kKarate, RegularizerKind::kUnnormalizedLaplacian, {4});
  one.sampler = SamplerKind::kRandom;
  one.trials = 3;
  ExperimentConfig many = one;
  many.budgets = {1, 2, 4, 7};
  const std::vector<RunRecord> a = *Sweep(one);
  const std::vector<RunRecord> b = *Sweep(many);
  for (int t = 0; t < 3; ++t) {
    EXPECT_EQ(a[t].selected, b[2 * 3 + t].selected);
    EXPECT_EQ(a[t].accuracy, b[2 * 3 + t].accuracy);
    EXPECT_EQ(a[t].loss, b[2 * 3 + t].loss);
  }
}

TEST(SweepTest, RandomTrialsAndSummary) {
  ExperimentConfig config = GreedyConfig(
      DatasetSource::kKarate, RegularizerKind::kUnnormalizedLaplacian, {2, 5});
  config.sampler = SamplerKind::kRandom;
  config.trials = 10;
  const std::vector<RunRecord> records = *Sweep(config);
  ASSERT_EQ(records.size(), 20u);
  EXPECT_EQ(records[0].budget, 2);
  EXPECT_EQ(records[9].trial, 9);
  EXPECT_EQ(records[10].budget, 5);
  EXPECT_EQ(records[0].sampler, "random");

  const std::vector<RunRecord> summary = Summarize(records);
  ASSERT_EQ(summary.size(), 2u);
  double mean_loss = 0.0;
  double mean_acc = 0.0;
  for (int t = 0; t < 10; ++t) {
    mean_loss += records[t].loss / 10;
    mean_acc += records[t].accuracy / 10;
  }
  EXPECT_NEAR(summary[0].loss, mean_loss, 1e-12 * mean_loss);
  EXPECT_NEAR(summary[0].accuracy, mean_acc, 1e-12);
  EXPECT_EQ(summary[0].trial, -1);
  EXPECT_TRUE(summary[0].selected.empty());
}

TEST(SweepTest, ValidatesConfig) {
  ExperimentConfig config = GreedyConfig(
      DatasetSource::kKarate, RegularizerKind::kUnnormalizedLaplacian, {35});
  EXPECT_EQ(Sweep(config).status().code(), absl::StatusCode::kOutOfRange);
  config.budgets = {3, 2};
  EXPECT_FALSE(Sweep(config).ok());
  config.budgets = {};
  EXPECT_FALSE(Sweep(config).ok());
  config.budgets = {2};
  config.trials = 0;
  EXPECT_FALSE(Sweep(config).ok());
  config.trials = 1;
  config.noise_policy = NoisePolicy::kFixed;
  config.fixed_noise_var = -1.0;
  EXPECT_FALSE(Sweep(config).ok());
}

class FileDatasetTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("agssl_experiment_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
    Write("path.edges", "1 2\n2 3\n3 4\n4 5\n5 6\n");
    Write("path.labels", "1\n1\n1\n-1\n-1\n-1\n");
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  void Write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
  }
  std::string Path(const std::string& name) const { return dir_ / name; }

  std::filesystem::path dir_;
};

TEST_F(FileDatasetTest, SweepsAOneIndexedEdgeList) {
  ExperimentConfig config;
  config.dataset = DatasetSource::kFile;
  config.edges_path = Path("path.edges");
  config.labels_path = Path("path.labels");
  config.one_indexed = true;
  config.budgets = {2};
  config.noisy = false;
  absl::StatusOr<std::vector<RunRecord>> records = Sweep(config);
  ASSERT_TRUE(records.ok()) << records.status();
  const RunRecord& r = (*records)[0];
  EXPECT_EQ(r.dataset, Path("path.edges"));
  const Regularizer l = Laplacian(*LoadEdgeList("0 1\n1 2\n2 3\n3 4\n4 5"));
  const SampleResult greedy = *GreedySample(
      l, MeasurementMatrix::Identity(6), 1.0 / l.matrix().trace(), 2);
  EXPECT_EQ(r.selected, greedy.state.selected);
  EXPECT_EQ(r.loss, greedy.state.objective);
  // Noiseless labels on S are reproduced exactly by the sign.
  const std::vector<int> truth = {1, 1, 1, -1, -1, -1};
  EXPECT_GE(r.accuracy, 2.0 / 6.0);
}

TEST_F(FileDatasetTest, MissingLabelsAreAnError) {
  ExperimentConfig config;
  config.dataset = DatasetSource::kFile;
  config.edges_path = Path("path.edges");
  config.one_indexed = true;
  config.budgets = {2};
  EXPECT_EQ(Sweep(config).status().code(),
            absl::StatusCode::kFailedPrecondition);
  config.edges_path = Path("missing.edges");
  EXPECT_FALSE(Sweep(config).ok());
}

TEST(WriteTest, CsvAndJsonlCarryTheSameFields) {
  RunRecord r;
  r.dataset = "karate";
  r.regularizer = "L";
  r.sampler = "greedy";
  r.budget = 2;
  r.trial = 0;
  r.seed = 3;
  r.loss = 0.1;
  r.accuracy = 33.0 / 34.0;
  r.selected = {33, 0};
  r.wall_time_s = 0.0;
  std::ostringstream csv;
  WriteCsv(std::vector<RunRecord>{r}, csv);
  EXPECT_EQ(csv.str(),
            "dataset,regularizer,sampler,budget,trial,seed,loss,accuracy,"
            "selected_nodes,wall_time_s,noisy\n"
            "karate,L,greedy,2,0,3,0.1,0.9705882352941176,33;0,0,true\n");

  std::ostringstream jsonl;
  WriteJsonl(std::vector<RunRecord>{r}, jsonl);
  const nlohmann::json j = nlohmann::json::parse(jsonl.str());
  EXPECT_EQ(j["accuracy"].get<double>(), r.accuracy);
  EXPECT_EQ(j["selected_nodes"], nlohmann::json({33, 0}));
  EXPECT_EQ(j["budget"], 2);
  EXPECT_EQ(j.size(), 11u);
}

TEST(ParseExperimentConfigTest, ParsesAllFields) {
  absl::StatusOr<ExperimentConfig> c = ParseExperimentConfig(R"({
    "dataset": "dolphin", "regularizer": "Ln", "sigma2": 0.5,
    "budgets": [1, 2, 3], "sampler": "random", "trials": 10, "seed": 7,
    "noisy": false, "record_timing": false})");
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->dataset, DatasetSource::kDolphin);
  EXPECT_EQ(c->regularizer, RegularizerKind::kNormalizedLaplacian);
  EXPECT_EQ(c->noise_policy, NoisePolicy::kFixed);
  EXPECT_EQ(c->fixed_noise_var, 0.5);
  EXPECT_THAT(c->budgets, ElementsAre(1, 2, 3));
  EXPECT_EQ(c->sampler, SamplerKind::kRandom);
  EXPECT_EQ(c->trials, 10);
  EXPECT_EQ(c->seed, 7u);
  EXPECT_FALSE(c->noisy);
  EXPECT_FALSE(c->record_timing);

  c = ParseExperimentConfig(
      R"({"dataset": {"edges": "a.txt", "labels": "b.txt", "one_indexed": true},
          "sigma2": "trace", "budgets": [2]})");
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->dataset, DatasetSource::kFile);
  EXPECT_EQ(c->edges_path, "a.txt");
  EXPECT_TRUE(c->one_indexed);
  EXPECT_EQ(c->noise_policy, NoisePolicy::kTraceReciprocal);
}

TEST(ParseExperimentConfigTest, RejectsBadConfigs) {
  for (const char* text : {
           "not json", "[]", R"({"budgets": []})", R"({"budgets": [2, 1]})",
           R"({"budgets": [0]})", R"({"budgets": [1.5]})",
           R"({"budgets": [1], "dataset": "cora"})",
           R"({"budgets": [1], "regularizer": "A"})",
           R"({"budgets": [1], "sigma2": -1})",
           R"({"budgets": [1], "sampler": "gsp"})",
           R"({"budgets": [1], "trials": 0})",
           R"({"budgets": [1], "seed": -4})",
           R"({"budgets": [1], "colour": "blue"})"}) {
    EXPECT_FALSE(ParseExperimentConfig(text).ok()) << text;
  }
  EXPECT_THAT(ParseExperimentConfig(R"({"budgets": [1], "colour": 1})")
                  .status()
                  .message(),
              HasSubstr("colour"));
}

}  // namespace
}  // namespace agssl
