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

#include "agssl/cli.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "agssl/experiment.h"
#include "agssl/format.h"
#include "agssl/graph.h"
#include "agssl/gssl.h"
#include "agssl/linalg.h"
#include "json.hpp"

namespace agssl {

namespace {

using Json = nlohmann::ordered_json;

struct GraphOptions {
  std::string graph;
  std::string reg = "L";
  bool one_indexed = false;
};

void AddGraphOptions(CLI::App* cmd, GraphOptions& opts) {
  cmd->add_option("--graph", opts.graph,
                  "Edge-list path, or a builtin: karate, dolphin")
      ->required();
  cmd->add_option("--reg", opts.reg, "Regularizer: L or Ln")
      ->check(CLI::IsMember({"L", "Ln"}));
  cmd->add_flag("--one-indexed", opts.one_indexed,
                "Node indices in the edge list start at 1");
}

absl::StatusOr<Graph> LoadGraph(const GraphOptions& opts) {
  if (std::optional<Dataset> d = DatasetFromName(opts.graph); d.has_value()) {
    return BuiltinDataset(*d);
  }
  absl::StatusOr<std::string> text = ReadFile(opts.graph);
  if (!text.ok()) return text.status();
  return LoadEdgeList(*text, std::nullopt, opts.one_indexed);
}

RegularizerKind ParseRegKind(const std::string& name) {
  return name == "Ln" ? RegularizerKind::kNormalizedLaplacian
                      : RegularizerKind::kUnnormalizedLaplacian;
}

absl::StatusOr<double> ResolveNoiseVar(const std::string& spec,
                                       const Regularizer& reg) {
  if (spec == "trace") {
    return NoiseVariance(reg, NoisePolicy::kTraceReciprocal, 0.0);
  }
  double value = 0.0;
  if (!absl::SimpleAtod(spec, &value) || !(value > 0.0) ||
      !std::isfinite(value)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "--sigma2 must be \"trace\" or a positive number, got \"", spec,
        "\""));
  }
  return value;
}

absl::StatusOr<std::vector<int>> ParseSamples(const std::string& text) {
  std::vector<int> out;
  for (absl::string_view tok :
       absl::StrSplit(text, absl::ByAnyChar(", "), absl::SkipEmpty())) {
    int v = 0;
    if (!absl::SimpleAtoi(tok, &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad sample index \"", tok, "\""));
    }
    out.push_back(v);
  }
  if (out.empty()) return absl::InvalidArgumentError("--samples is empty");
  return out;
}

int Fail(const absl::Status& status, std::ostream& err) {
  err << "error: " << status.message() << "\n";
  return kExitValidation;
}

struct SampleOptions {
  GraphOptions graph;
  int budget = 0;
  std::string sigma2 = "trace";
  std::string method = "greedy";
  uint64_t seed = 0;
};

int RunSample(const SampleOptions& opts, std::ostream& out,
              std::ostream& err) {
  absl::StatusOr<Graph> g = LoadGraph(opts.graph);
  if (!g.ok()) return Fail(g.status(), err);
  absl::StatusOr<Regularizer> reg =
      MakeRegularizer(*g, ParseRegKind(opts.graph.reg));
  if (!reg.ok()) return Fail(reg.status(), err);
  absl::StatusOr<double> noise_var = ResolveNoiseVar(opts.sigma2, *reg);
  if (!noise_var.ok()) return Fail(noise_var.status(), err);
  const MeasurementMatrix c = MeasurementMatrix::Identity(g->num_nodes());

  Json j;
  j["method"] = opts.method;
  j["sigma2"] = *noise_var;
  if (opts.method == "greedy") {
    absl::StatusOr<SampleResult> result =
        GreedySample(*reg, c, *noise_var, opts.budget);
    if (!result.ok()) return Fail(result.status(), err);
    j["selected"] = result->state.selected;
    j["loss"] = result->state.objective;
    Json steps = Json::array();
    for (const SampleStep& step : result->per_step) {
      steps.push_back({{"node", step.node},
                       {"objective", step.objective},
                       {"decrease", step.decrease}});
    }
    j["per_step"] = std::move(steps);
  } else if (opts.method == "random") {
    absl::StatusOr<std::vector<int>> chosen =
        RandomSample(g->num_nodes(), opts.budget, opts.seed);
    if (!chosen.ok()) return Fail(chosen.status(), err);
    absl::StatusOr<double> loss = Objective(*reg, c, *chosen, *noise_var);
    if (!loss.ok()) return Fail(loss.status(), err);
    j["selected"] = *chosen;
    j["loss"] = *loss;
    j["per_step"] = Json::array();
  } else {
    absl::StatusOr<ExhaustiveResult> best =
        ExhaustiveOptimal(*reg, c, *noise_var, opts.budget);
    if (!best.ok()) return Fail(best.status(), err);
    j["selected"] = best->selected;
    j["loss"] = best->objective;
    j["per_step"] = Json::array();
  }
  out << j.dump() << "\n";
  return kExitOk;
}

struct PredictOptions {
  GraphOptions graph;
  std::string samples;
  std::string labels;
  std::string sigma2 = "trace";
  std::optional<uint64_t> noise_seed;
};

int RunPredict(const PredictOptions& opts, std::ostream& out,
               std::ostream& err) {
  absl::StatusOr<Graph> g = LoadGraph(opts.graph);
  if (!g.ok()) return Fail(g.status(), err);
  std::vector<int> truth;
  if (!opts.labels.empty()) {
    absl::StatusOr<std::string> text = ReadFile(opts.labels);
    if (!text.ok()) return Fail(text.status(), err);
    absl::StatusOr<std::vector<int>> labels = LoadLabels(*text);
    if (!labels.ok()) return Fail(labels.status(), err);
    absl::StatusOr<Graph> labeled = g->WithLabels(*labels);
    if (!labeled.ok()) return Fail(labeled.status(), err);
    truth = *std::move(labels);
  } else if (g->labels().has_value()) {
    truth = *g->labels();
  } else {
    return Fail(absl::InvalidArgumentError(
                    "--labels is required for graphs without bundled labels"),
                err);
  }
  absl::StatusOr<std::vector<int>> samples = ParseSamples(opts.samples);
  if (!samples.ok()) return Fail(samples.status(), err);
  absl::StatusOr<Regularizer> reg =
      MakeRegularizer(*g, ParseRegKind(opts.graph.reg));
  if (!reg.ok()) return Fail(reg.status(), err);
  absl::StatusOr<double> noise_var = ResolveNoiseVar(opts.sigma2, *reg);
  if (!noise_var.ok()) return Fail(noise_var.status(), err);

  const MeasurementMatrix c = MeasurementMatrix::Identity(g->num_nodes());
  absl::StatusOr<SamplerState> state =
      MakeState(*reg, c, *samples, *noise_var);
  if (!state.ok()) return Fail(state.status(), err);
  Eigen::VectorXd y(samples->size());
  for (size_t k = 0; k < samples->size(); ++k) y(k) = truth[(*samples)[k]];
  if (opts.noise_seed.has_value()) {
    absl::StatusOr<Eigen::VectorXd> noisy =
        AddLabelNoise(y, *noise_var, *opts.noise_seed);
    if (!noisy.ok()) return Fail(noisy.status(), err);
    y = *std::move(noisy);
  }
  absl::StatusOr<Eigen::VectorXd> x_hat = PosteriorMean(*state, c, y);
  if (!x_hat.ok()) return Fail(x_hat.status(), err);
  const std::vector<int> predicted = Classify(*x_hat);
  absl::StatusOr<double> acc = Accuracy(predicted, truth);
  if (!acc.ok()) return Fail(acc.status(), err);

  Json j;
  j["x_hat"] = std::vector<double>(x_hat->data(),
                                   x_hat->data() + x_hat->size());
  j["predicted_labels"] = predicted;
  j["accuracy"] = *acc;
  out << j.dump() << "\n";
  return kExitOk;
}

struct SweepOptions {
  std::string config;
  std::string format = "csv";
  bool no_timing = false;
  bool summary = false;
};

int RunSweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  absl::StatusOr<std::string> text = ReadFile(opts.config);
  if (!text.ok()) return Fail(text.status(), err);
  absl::StatusOr<ExperimentConfig> config = ParseExperimentConfig(*text);
  if (!config.ok()) return Fail(config.status(), err);
  if (opts.no_timing) config->record_timing = false;
  absl::StatusOr<std::vector<RunRecord>> records = Sweep(*config);
  if (!records.ok()) return Fail(records.status(), err);
  if (config->sampler == SamplerKind::kRandom && config->noisy) {
    err << "note: random-baseline observations include label noise\n";
  }
  const std::vector<RunRecord> rows =
      opts.summary ? Summarize(*records) : *std::move(records);
  if (opts.format == "jsonl") {
    WriteJsonl(rows, out);
  } else {
    WriteCsv(rows, out);
  }
  return kExitOk;
}

int RunCheck(const GraphOptions& opts, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Graph> g = LoadGraph(opts);
  if (!g.ok()) return Fail(g.status(), err);
  const bool connected = IsConnected(*g);
  absl::StatusOr<Regularizer> reg = MakeRegularizer(*g, ParseRegKind(opts.reg));
  Json j;
  j["nodes"] = g->num_nodes();
  j["edges"] = g->num_edges();
  j["connected"] = connected;
  j["components"] = g->NumComponents();
  j["regularizer"] = opts.reg;
  bool pass = connected && reg.ok();
  if (reg.ok()) {
    const StieltjesReport report =
        CheckStieltjes(reg->matrix(), DefaultPolicy().stieltjes_tol);
    j["symmetric"] = report.is_symmetric;
    j["max_offdiag"] = report.max_offdiag + 0.0;  // no "-0"
    j["min_eigenvalue"] = report.min_eigenvalue;
    j["max_eigenvalue"] = report.max_eigenvalue;
    j["stieltjes"] = report.verdict;
    j["nullity"] = report.nullity;
    pass = pass && report.verdict && report.nullity <= 1;
  } else {
    j["error"] = std::string(reg.status().message());
  }
  j["pass"] = pass;
  out << j.dump() << "\n";
  if (!pass) {
    err << "check failed\n";
    return kExitValidation;
  }
  return kExitOk;
}

int RunBound(int budget, std::ostream& out, std::ostream& err) {
  if (budget < 1) {
    return Fail(absl::InvalidArgumentError(
                    absl::StrCat("--budget must be at least 1, got ", budget)),
                err);
  }
  out << FormatDouble(GreedyBound(budget)) << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app("Active graph-based semi-supervised learning", "agssl");
  app.require_subcommand(1);

  SampleOptions sample;
  CLI::App* sample_cmd = app.add_subcommand("sample", "Choose nodes to label");
  AddGraphOptions(sample_cmd, sample.graph);
  sample_cmd->add_option("--budget", sample.budget, "Number of samples")
      ->required();
  sample_cmd->add_option("--sigma2", sample.sigma2,
                         "Noise variance, or \"trace\" for 1/tr(Omega0)");
  sample_cmd->add_option("--method", sample.method)
      ->check(CLI::IsMember({"greedy", "random", "exhaustive"}));
  sample_cmd->add_option("--seed", sample.seed, "Seed for --method random");

  PredictOptions predict;
  uint64_t noise_seed = 0;
  CLI::App* predict_cmd =
      app.add_subcommand("predict", "Predict labels from sampled nodes");
  AddGraphOptions(predict_cmd, predict.graph);
  predict_cmd->add_option("--samples", predict.samples,
                          "Comma-separated node indices")
      ->required();
  predict_cmd->add_option("--labels", predict.labels,
                          "Label file; defaults to the bundled labels");
  predict_cmd->add_option("--sigma2", predict.sigma2,
                          "Noise variance, or \"trace\" for 1/tr(Omega0)");
  CLI::Option* noise_opt = predict_cmd->add_option(
      "--noise-seed", noise_seed, "Add Gaussian label noise with this seed");

  SweepOptions sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Run an experiment over sample budgets");
  sweep_cmd->add_option("--config", sweep.config, "JSON config path")
      ->required();
  sweep_cmd->add_option("--format", sweep.format)
      ->check(CLI::IsMember({"csv", "jsonl"}));
  sweep_cmd->add_flag("--no-timing", sweep.no_timing,
                      "Write 0 for wall_time_s");
  sweep_cmd->add_flag("--summary", sweep.summary,
                      "Average trials per budget");

  GraphOptions check;
  CLI::App* check_cmd =
      app.add_subcommand("check", "Validate a graph and its regularizer");
  AddGraphOptions(check_cmd, check);

  int bound_budget = 0;
  CLI::App* bound_cmd =
      app.add_subcommand("bound", "Print the greedy guarantee (1-1/s)^(s-1)");
  bound_cmd->add_option("--budget", bound_budget)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, err, err);
    return kExitUsage;
  }

  if (sample_cmd->parsed()) return RunSample(sample, out, err);
  if (predict_cmd->parsed()) {
    if (noise_opt->count() > 0) predict.noise_seed = noise_seed;
    return RunPredict(predict, out, err);
  }
  if (sweep_cmd->parsed()) return RunSweep(sweep, out, err);
  if (check_cmd->parsed()) return RunCheck(check, out, err);
  return RunBound(bound_budget, out, err);
}

}  // namespace agssl
