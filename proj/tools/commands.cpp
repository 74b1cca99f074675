// Copyright 2026 The fuzzysynth Authors.
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

#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fuzzysynth/dataset.hpp"
#include "fuzzysynth/engine.hpp"
#include "fuzzysynth/error.hpp"
#include "fuzzysynth/evaluation.hpp"
#include "fuzzysynth/io.hpp"
#include "json.hpp"

#ifndef FUZZYSYNTH_VERSION
#define FUZZYSYNTH_VERSION "unknown"
#endif

namespace fuzzysynth::cli {

using nlohmann::json;

namespace {

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

json config_json(const Config& cfg) {
  return {{"min_value", cfg.min_value},
          {"max_value", cfg.max_value},
          {"max_length", cfg.max_length}};
}

// RunManifest: subcommand, resolved options, config, seed, timestamps and the
// code version, written next to every output.
void write_manifest(const std::filesystem::path& out, const std::string& subcommand,
                    const json& options, const Config& cfg, std::uint64_t seed,
                    const std::string& started) {
  json m = {{"subcommand", subcommand},
            {"options", options},
            {"config", config_json(cfg)},
            {"seed", seed},
            {"started", started},
            {"finished", timestamp()},
            {"version", FUZZYSYNTH_VERSION}};
  std::ofstream f(manifest_path(out));
  if (!f) throw Error("cannot write manifest for " + out.string());
  f << m.dump(2) << '\n';
}

Config dataset_config(const Dataset& data) {
  return data.header ? data.header->config : Config{};
}

Dataset load_dataset(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error("dataset not found: " + path.string());
  return read_dataset(path);
}

// Runs `task(i)` for i in [0, count) on `jobs` threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  std::vector<std::thread> workers;
  const int n = std::min<int>(jobs, static_cast<int>(count));
  for (int w = 0; w < n; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::optional<PolicyMatrix> load_init(const std::string& init, std::size_t index, int steps) {
  if (init.empty() || init == "random") return std::nullopt;
  std::filesystem::path path(init);
  if (std::filesystem::is_directory(path)) path /= std::to_string(index) + ".json";
  if (!std::filesystem::exists(path)) throw Error("init logits not found: " + path.string());
  return read_logits(path, steps);
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) {
  auto rng = derived_rng(seed, index);
  return rng();
}

std::filesystem::path manifest_path(const std::filesystem::path& out) {
  return std::filesystem::path(out.string() + ".manifest.json");
}

void gen_data(const GenDataOptions& opts) {
  const std::string started = timestamp();
  opts.config.validate();
  DatasetSpec spec;
  spec.num_samples = opts.num;
  spec.program_length = opts.length;
  spec.examples_observed = opts.observed;
  spec.examples_assessment = opts.assessment;
  spec.noise_prob = opts.noise;
  spec.noise_all_outputs = opts.noise_all_outputs;
  spec.seed = opts.seed;
  spec.validate();

  Dataset data;
  data.samples = gen_dataset(spec, opts.config);
  data.header = DatasetHeader{opts.config,   opts.length,     opts.noise,
                              opts.seed,     opts.observed,   opts.assessment,
                              data.samples.size()};
  write_dataset(opts.out, data);
  write_manifest(opts.out, "gen-data",
                 {{"num", opts.num},
                  {"length", opts.length},
                  {"observed", opts.observed},
                  {"assessment", opts.assessment},
                  {"noise", opts.noise},
                  {"train_noise", opts.noise_all_outputs},
                  {"out", opts.out.string()}},
                 opts.config, opts.seed, started);
}

void synthesize(const SynthesizeOptions& opts) {
  const std::string started = timestamp();
  if (!(opts.timeout > 0.0)) throw ValidationError("--timeout must be positive");
  const Dataset data = load_dataset(opts.data);
  const Config cfg = dataset_config(data);
  const FunctionTables tables(cfg);

  // Load every init up front so a bad file fails before any work starts.
  std::vector<std::optional<PolicyMatrix>> inits(data.samples.size());
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    inits[i] = load_init(opts.init, i, data.samples[i].length);
  }

  std::vector<ResultRecord> records(data.samples.size());
  parallel_for(data.samples.size(), opts.jobs, [&](std::size_t i) {
    SynthOptions so;
    so.timeout_seconds = opts.timeout;
    so.learning_rate = opts.lr;
    so.momentum = opts.momentum;
    so.adam_beta2 = opts.adam_beta2;
    so.optimizer = opts.optimizer == "adam" ? Optimizer::kAdam : Optimizer::kGradientDescent;
    so.restart_iterations = opts.restart_iters;
    so.max_restarts = opts.max_restarts;
    so.structural_prior = opts.structural_prior;
    so.check_argmax_each_step = opts.argmax_check;
    so.init = inits[i];
    so.seed = sample_seed(opts.seed, i);
    records[i] = {i, fuzzysynth::synthesize(data.samples[i], tables, so)};
  });
  write_results(opts.out, records);
  write_manifest(opts.out, "synthesize",
                 {{"data", opts.data.string()},
                  {"timeout", opts.timeout},
                  {"lr", opts.lr},
                  {"momentum", opts.momentum},
                  {"optimizer", opts.optimizer},
                  {"adam_beta2", opts.adam_beta2},
                  {"init", opts.init},
                  {"restart_iters", opts.restart_iters},
                  {"max_restarts", opts.max_restarts},
                  {"structural_prior", opts.structural_prior},
                  {"argmax_check", opts.argmax_check},
                  {"jobs", opts.jobs},
                  {"out", opts.out.string()}},
                 cfg, opts.seed, started);
}

std::string evaluate(const EvaluateOptions& opts) {
  const std::string started = timestamp();
  const Dataset data = load_dataset(opts.data);
  if (!std::filesystem::exists(opts.results)) {
    throw Error("results not found: " + opts.results.string());
  }
  const auto records = read_results(opts.results);
  if (records.size() != data.samples.size()) {
    throw ValidationError("evaluate: " + std::to_string(records.size()) + " results for " +
                          std::to_string(data.samples.size()) + " samples");
  }
  const Config cfg = dataset_config(data);
  std::vector<SynthesisResult> results(records.size());
  double total_wall = 0.0;
  for (const auto& r : records) {
    if (r.index >= results.size()) throw ValidationError("evaluate: result index out of range");
    results[r.index] = r.result;
    total_wall += r.result.wall_time;
  }

  json report = {{"metric", opts.metric},
                 {"samples", data.samples.size()},
                 {"total_wall_time", total_wall},
                 {"program_length", data.header ? json(data.header->program_length) : json()},
                 {"noise", data.header ? json(data.header->noise) : json()}};
  if (opts.metric == "synthesis") {
    report["accuracy"] = eval_synthesis(results, data.samples, cfg);
  } else if (opts.metric == "token-score") {
    double mean = 0.0;
    Score total;
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (data.samples[i].assessment.empty()) {
        throw ValidationError("evaluate: sample " + std::to_string(i) +
                              " has no assessment examples");
      }
      const Score s = prediction_score(results[i].program, data.samples[i], cfg);
      mean += s.value();
      total += s;
    }
    report["mean_score"] = results.empty() ? 0.0 : mean / static_cast<double>(results.size());
    report["numerator"] = total.numerator;
    report["denominator"] = total.denominator;
  } else {
    throw ValidationError("evaluate: unknown metric '" + opts.metric + "'");
  }
  const std::string text = report.dump();
  if (!opts.out.empty()) {
    std::ofstream f(opts.out);
    if (!f) throw Error("cannot open " + opts.out.string() + " for writing");
    f << report.dump(2) << '\n';
    write_manifest(opts.out, "evaluate",
                   {{"data", opts.data.string()},
                    {"results", opts.results.string()},
                    {"metric", opts.metric},
                    {"out", opts.out.string()}},
                   cfg, 0, started);
  }
  return text;
}

void baseline(const BaselineOptions& opts) {
  const std::string started = timestamp();
  if (!(opts.timeout > 0.0)) throw ValidationError("--timeout must be positive");
  const Dataset data = load_dataset(opts.data);
  const Config cfg = dataset_config(data);
  std::vector<ResultRecord> records(data.samples.size());
  parallel_for(data.samples.size(), opts.jobs, [&](std::size_t i) {
    const std::uint64_t seed = sample_seed(opts.seed, i);
    std::mt19937_64 rng(seed);
    SynthesisResult r = random_search(data.samples[i], cfg, opts.timeout, rng);
    r.seed = seed;
    records[i] = {i, std::move(r)};
  });
  write_results(opts.out, records);
  write_manifest(opts.out, "baseline",
                 {{"data", opts.data.string()},
                  {"timeout", opts.timeout},
                  {"jobs", opts.jobs},
                  {"out", opts.out.string()}},
                 cfg, opts.seed, started);
}

namespace {

void add_config_flags(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--min-value", cfg.min_value, "Smallest representable integer")
      ->capture_default_str();
  cmd->add_option("--max-value", cfg.max_value, "Largest representable integer")
      ->capture_default_str();
  cmd->add_option("--max-length", cfg.max_length, "Maximum list length")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"status", "error"}, {"kind", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gradient-based program synthesis over a list DSL", "fuzzysynth"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FUZZYSYNTH_VERSION);

  GenDataOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate a dataset of I/O samples");
  gen_cmd->add_option("--num", gen.num, "Number of samples")->required()->check(
      CLI::NonNegativeNumber);
  gen_cmd->add_option("--length", gen.length, "Program length")->required()->check(
      CLI::PositiveNumber);
  gen_cmd->add_option("--observed", gen.observed, "Observed examples per sample")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--assessment", gen.assessment, "Assessment examples per sample")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--noise", gen.noise, "Per-token output noise probability")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_flag("--train-noise", gen.noise_all_outputs,
                    "Noise every output instead of observed outputs only");
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output dataset file")->required();
  add_config_flags(gen_cmd, gen.config);

  SynthesizeOptions syn;
  auto* syn_cmd = app.add_subcommand("synthesize", "Run gradient-descent synthesis");
  syn_cmd->add_option("--data", syn.data, "Dataset file")->required();
  syn_cmd->add_option("--timeout", syn.timeout, "Seconds per sample")->capture_default_str();
  syn_cmd->add_option("--lr", syn.lr, "Learning rate on logits")->capture_default_str();
  syn_cmd->add_option("--momentum", syn.momentum, "Momentum coefficient (0 = plain descent)")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  syn_cmd->add_option("--optimizer", syn.optimizer, "gd (plain or momentum) or adam")
      ->capture_default_str()
      ->check(CLI::IsMember({"gd", "adam"}));
  syn_cmd->add_option("--adam-beta2", syn.adam_beta2, "Adam second-moment decay")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  syn_cmd->add_option("--init", syn.init,
                      "'random', a logits file, or a directory of <index>.json logits")
      ->capture_default_str();
  syn_cmd->add_option("--restart-iters", syn.restart_iters, "Descent steps per restart")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  syn_cmd->add_option("--max-restarts", syn.max_restarts, "Restart cap (0 = until timeout)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  syn_cmd->add_flag("--structural-prior", syn.structural_prior,
                    "Allow head/tail only as the last step");
  syn_cmd->add_flag("!--no-argmax-check", syn.argmax_check,
                    "Only test the argmax program at the end of each restart");
  syn_cmd->add_option("--seed", syn.seed, "Random seed")->capture_default_str();
  syn_cmd->add_option("--jobs", syn.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  syn_cmd->add_option("--out", syn.out, "Results file")->required();

  EvaluateOptions ev;
  auto* ev_cmd = app.add_subcommand("evaluate", "Score a results file against its dataset");
  ev_cmd->add_option("--data", ev.data, "Dataset file")->required();
  ev_cmd->add_option("--results", ev.results, "Results file")->required();
  ev_cmd->add_option("--metric", ev.metric, "synthesis or token-score")
      ->capture_default_str()
      ->check(CLI::IsMember({"synthesis", "token-score"}));
  ev_cmd->add_option("--out", ev.out, "Report file");

  BaselineOptions base;
  auto* base_cmd = app.add_subcommand("baseline", "Random-search baseline");
  base_cmd->add_option("--data", base.data, "Dataset file")->required();
  base_cmd->add_option("--timeout", base.timeout, "Seconds per sample")->capture_default_str();
  base_cmd->add_option("--seed", base.seed, "Random seed")->capture_default_str();
  base_cmd->add_option("--jobs", base.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  base_cmd->add_option("--out", base.out, "Results file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << FUZZYSYNTH_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    err << app.help();
    return 2;
  }

  try {
    if (gen_cmd->parsed()) gen_data(gen);
    if (syn_cmd->parsed()) synthesize(syn);
    if (ev_cmd->parsed()) out << evaluate(ev) << '\n';
    if (base_cmd->parsed()) baseline(base);
  } catch (const ParseError& e) {
    report_error(err, "parse", e.what());
    return 1;
  } catch (const ValidationError& e) {
    report_error(err, "validation", e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error(err, "runtime", e.what());
    return 1;
  }
  return 0;
}

}  // namespace fuzzysynth::cli
