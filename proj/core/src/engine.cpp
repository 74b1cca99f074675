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

#include "fuzzysynth/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "fuzzysynth/error.hpp"

namespace fuzzysynth {

PolicyMatrix::PolicyMatrix(int steps, std::vector<double> logits)
    : steps_(steps), logits_(std::move(logits)) {
  if (steps_ < 1) throw ValidationError("policy: program length must be positive");
  if (logits_.size() != static_cast<std::size_t>(steps_) * kNumFunctions) {
    throw ValidationError("policy: expected " + std::to_string(steps_ * kNumFunctions) +
                          " logits, got " + std::to_string(logits_.size()));
  }
  for (double x : logits_) {
    if (!std::isfinite(x)) throw ValidationError("policy: non-finite logit");
  }
  refresh();
}

PolicyMatrix PolicyMatrix::random(int steps, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> logits(static_cast<std::size_t>(steps) * kNumFunctions);
  for (double& x : logits) x = normal(rng);
  return PolicyMatrix(steps, std::move(logits));
}

PolicyMatrix PolicyMatrix::one_hot(const Program& p, double margin) {
  std::vector<double> logits(p.size() * kNumFunctions, 0.0);
  for (std::size_t t = 0; t < p.size(); ++t) {
    logits[t * kNumFunctions + index_of(p[t])] = margin;
  }
  return PolicyMatrix(static_cast<int>(p.size()), std::move(logits));
}

void PolicyMatrix::mask_list_reducers_before_last() {
  mask_.assign(logits_.size(), 0);
  for (int t = 0; t + 1 < steps_; ++t) {
    mask_[t * kNumFunctions + index_of(FunctionId::kHead)] = 1;
    mask_[t * kNumFunctions + index_of(FunctionId::kTail)] = 1;
  }
  refresh();
}

void PolicyMatrix::step(std::span<const double> direction, double rate) {
  if (direction.size() != logits_.size()) throw ValidationError("policy: step size mismatch");
  for (std::size_t n = 0; n < logits_.size(); ++n) logits_[n] -= rate * direction[n];
  refresh();
}

void PolicyMatrix::refresh() {
  probs_.assign(logits_.size(), 0.0);
  for (int t = 0; t < steps_; ++t) {
    const std::size_t row = static_cast<std::size_t>(t) * kNumFunctions;
    double hi = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < kNumFunctions; ++s) {
      if (!masked(t, s)) hi = std::max(hi, logits_[row + s]);
    }
    double total = 0.0;
    for (int s = 0; s < kNumFunctions; ++s) {
      if (masked(t, s)) continue;
      probs_[row + s] = std::exp(logits_[row + s] - hi);
      total += probs_[row + s];
    }
    for (int s = 0; s < kNumFunctions; ++s) probs_[row + s] /= total;
  }
}

Program extract_program(std::span<const double> probs, int steps) {
  Program p;
  p.reserve(steps);
  for (int t = 0; t < steps; ++t) {
    const auto row = probs.subspan(static_cast<std::size_t>(t) * kNumFunctions, kNumFunctions);
    // max_element returns the first maximum, which is the lowest index.
    const auto best = std::max_element(row.begin(), row.end());
    p.push_back(function_at(static_cast<int>(best - row.begin())));
  }
  return p;
}

Target::Target(const BatchState& truth) : examples_(truth.examples()) {
  const Layout& lay = truth.layout();
  for (int e = 0; e < truth.examples(); ++e) {
    const StateTensor s = truth.example(e);
    if (!is_sharp(s)) {
      throw ValidationError("target: example " + std::to_string(e) + " is not a sharp state");
    }
    if (s(0, 0, 0) != 0.0) {
      throw ValidationError("target: example " + std::to_string(e) +
                            " is null; program outputs are never null");
    }
    const auto slice = truth.slice(e);
    for (std::size_t n = lay.index(1, 0, 0); n < slice.size(); ++n) {
      if (slice[n] != 0.0) tokens_.push_back({e, n});
    }
  }
  if (tokens_.empty()) throw ValidationError("target: no ground-truth tokens");
}

double loss(const BatchState& output, const Target& target) {
  if (output.examples() != target.examples()) {
    throw ValidationError("loss: output has " + std::to_string(output.examples()) +
                          " examples, target has " + std::to_string(target.examples()));
  }
  double total = 0.0;
  for (const auto& tok : target.tokens()) {
    total -= std::log(std::max(output.slice(tok.example)[tok.offset], kLogClamp));
  }
  return total / target.count();
}

double loss(const BatchState& output, const BatchState& truth) {
  return loss(output, Target(truth));
}

namespace {

using RowSets = std::vector<std::vector<int>>;

RowSets active_rows(const BatchState& input) {
  RowSets rows;
  rows.reserve(input.examples());
  for (int e = 0; e < input.examples(); ++e) {
    rows.push_back(kernel::occupied_list_rows(input.layout(), input.slice(e)));
  }
  return rows;
}

// Zeroes the integer row and the given list rows of one example slice; the
// rest of a buffer is never written after allocation.
void clear_rows(std::span<double> slice, const Layout& lay, std::span<const int> rows) {
  std::fill_n(slice.begin() + lay.index(1, 0, 0), lay.depth, 0.0);
  for (int i : rows) {
    std::fill_n(slice.begin() + lay.index(i, 0, 0), static_cast<std::size_t>(i - 1) * lay.depth,
                0.0);
  }
}

void check_policy_shape(std::span<const double> probs, int steps) {
  if (steps < 1 || probs.size() != static_cast<std::size_t>(steps) * kNumFunctions) {
    throw ValidationError("policy shape does not match program length " + std::to_string(steps));
  }
}

// Reusable buffers for repeated forward/backward passes over one sample.
class Workspace {
 public:
  Workspace(const BatchState& input, int steps, const FunctionTables& tables)
      : tables_(tables), rows_(active_rows(input)) {
    traj_.states.reserve(steps + 1);
    traj_.states.push_back(input);
    for (int t = 0; t < steps; ++t) traj_.states.emplace_back(input.layout(), input.examples());
    adj_ = BatchState(input.layout(), input.examples());
    adj_prev_ = BatchState(input.layout(), input.examples());
  }

  const Trajectory& trajectory() const { return traj_; }
  const RowSets& rows() const { return rows_; }

  const Trajectory& run_forward(std::span<const double> probs, int steps) {
    const Layout& lay = tables_.layout();
    for (int t = 1; t <= steps; ++t) {
      const BatchState& prev = traj_.states[t - 1];
      BatchState& next = traj_.states[t];
      for (int e = 0; e < prev.examples(); ++e) {
        auto out = next.slice(e);
        clear_rows(out, lay, rows_[e]);
        for (int s = 0; s < kNumFunctions; ++s) {
          const double w = probs[(t - 1) * kNumFunctions + s];
          if (w == 0.0) continue;
          kernel::forward_accumulate(function_at(s), tables_, prev.slice(e), out, w, rows_[e]);
        }
      }
    }
    return traj_;
  }

  std::vector<double> run_backward(std::span<const double> probs, int steps,
                                   const Trajectory& traj, const Target& target) {
    const Layout& lay = tables_.layout();
    std::vector<double> grad(static_cast<std::size_t>(steps) * kNumFunctions, 0.0);
    const BatchState& out = traj.states[steps];
    for (int e = 0; e < out.examples(); ++e) clear_rows(adj_.slice(e), lay, rows_[e]);
    for (const auto& tok : target.tokens()) {
      adj_.slice(tok.example)[tok.offset] =
          -1.0 / (target.count() * std::max(out.slice(tok.example)[tok.offset], kLogClamp));
    }
    for (int t = steps; t >= 1; --t) {
      const BatchState& primal = traj.states[t - 1];
      const bool propagate = t > 1;
      for (int e = 0; e < out.examples(); ++e) {
        auto dst = adj_prev_.slice(e);
        if (propagate) clear_rows(dst, lay, rows_[e]);
        for (int s = 0; s < kNumFunctions; ++s) {
          const double w = probs[(t - 1) * kNumFunctions + s];
          grad[(t - 1) * kNumFunctions + s] += kernel::adjoint_accumulate(
              function_at(s), tables_, adj_.slice(e), primal.slice(e),
              propagate ? dst : std::span<double>(), w, rows_[e]);
        }
      }
      std::swap(adj_, adj_prev_);
    }
    return grad;
  }

 private:
  const FunctionTables& tables_;
  RowSets rows_;
  Trajectory traj_;
  BatchState adj_;
  BatchState adj_prev_;
};

void check_trajectory(const Trajectory& traj, int steps, const Target& target) {
  if (traj.states.size() != static_cast<std::size_t>(steps) + 1) {
    throw ValidationError("trajectory has " + std::to_string(traj.states.size()) +
                          " states, policy expects " + std::to_string(steps + 1));
  }
  if (traj.states.back().examples() != target.examples()) {
    throw ValidationError("trajectory and target differ in example count");
  }
}

std::vector<double> softmax_chain(std::span<const double> probs, int steps,
                                  std::span<const double> dprob) {
  std::vector<double> dlogit(dprob.size(), 0.0);
  for (int t = 0; t < steps; ++t) {
    const std::size_t row = static_cast<std::size_t>(t) * kNumFunctions;
    double mean = 0.0;
    for (int s = 0; s < kNumFunctions; ++s) mean += probs[row + s] * dprob[row + s];
    for (int s = 0; s < kNumFunctions; ++s) {
      dlogit[row + s] = probs[row + s] * (dprob[row + s] - mean);
    }
  }
  return dlogit;
}

}  // namespace

Trajectory forward(std::span<const double> probs, int steps, const BatchState& input,
                   const FunctionTables& tables) {
  check_policy_shape(probs, steps);
  if (!(input.layout() == tables.layout())) {
    throw ValidationError("forward: input shape does not match config");
  }
  Workspace ws(input, steps, tables);
  ws.run_forward(probs, steps);
  return ws.trajectory();
}

std::vector<double> probability_gradient(std::span<const double> probs, int steps,
                                         const Trajectory& traj, const Target& target,
                                         const FunctionTables& tables) {
  check_policy_shape(probs, steps);
  check_trajectory(traj, steps, target);
  Workspace ws(traj.states.front(), steps, tables);
  return ws.run_backward(probs, steps, traj, target);
}

std::vector<double> gradient(const PolicyMatrix& pi, const Trajectory& traj, const Target& target,
                             const FunctionTables& tables) {
  const auto dprob =
      probability_gradient(pi.probabilities(), pi.steps(), traj, target, tables);
  return softmax_chain(pi.probabilities(), pi.steps(), dprob);
}

SynthesisResult synthesize(const Sample& sample, const Config& cfg, const SynthOptions& opts) {
  const FunctionTables tables(cfg);
  return synthesize(sample, tables, opts);
}

SynthesisResult synthesize(const Sample& sample, const FunctionTables& tables,
                           const SynthOptions& opts) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const Config& cfg = tables.config();

  if (!(opts.timeout_seconds > 0.0)) throw ValidationError("synthesize: timeout must be positive");
  if (sample.observed.empty()) throw ValidationError("synthesize: sample has no observed examples");
  const int steps = sample.length;
  if (steps < 1) throw ValidationError("synthesize: program length must be positive");
  if (opts.init && opts.init->steps() != steps) {
    throw ValidationError("synthesize: init policy has " + std::to_string(opts.init->steps()) +
                          " steps, sample needs " + std::to_string(steps));
  }

  std::vector<Value> inputs;
  std::vector<Value> outputs;
  for (const Example& ex : sample.observed) {
    inputs.push_back(ex.input);
    outputs.push_back(ex.output);
  }
  const BatchState input = encode_batch(inputs, cfg);
  const Target target(encode_batch(outputs, cfg));

  const auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  std::mt19937_64 rng(opts.seed);
  Workspace ws(input, steps, tables);
  SynthesisResult best;
  best.seed = opts.seed;
  best.final_loss = std::numeric_limits<double>::infinity();
  double lowest_loss = std::numeric_limits<double>::infinity();
  bool have_best = false;

  for (int restart = 0;; ++restart) {
    PolicyMatrix pi = restart == 0 && opts.init ? *opts.init : PolicyMatrix::random(steps, rng);
    if (opts.structural_prior) pi.mask_list_reducers_before_last();
    std::vector<double> velocity(pi.logits().size(), 0.0);
    std::vector<double> second(pi.logits().size(), 0.0);
    std::vector<double> direction(pi.logits().size(), 0.0);

    RestartRecord rec;
    for (int it = 0;; ++it) {
      const Trajectory& traj = ws.run_forward(pi.probabilities(), steps);
      rec.loss = loss(traj.states.back(), target);
      rec.iterations = it;
      rec.program = extract_program(pi);
      if (opts.check_argmax_each_step && consistent_with(rec.program, sample.observed, cfg)) {
        rec.consistent = true;
      }
      if (rec.loss < opts.convergence_loss) rec.converged = true;
      if (rec.consistent || rec.converged || it >= opts.restart_iterations ||
          elapsed() >= opts.timeout_seconds) {
        break;
      }
      const auto dprob = ws.run_backward(pi.probabilities(), steps, traj, target);
      const auto dlogit = softmax_chain(pi.probabilities(), steps, dprob);
      if (opts.optimizer == Optimizer::kAdam) {
        constexpr double kEps = 1e-8;
        const double b1 = opts.adam_beta1;
        const double b2 = opts.adam_beta2;
        const double c1 = 1.0 - std::pow(b1, it + 1);
        const double c2 = 1.0 - std::pow(b2, it + 1);
        for (std::size_t n = 0; n < velocity.size(); ++n) {
          velocity[n] = b1 * velocity[n] + (1.0 - b1) * dlogit[n];
          second[n] = b2 * second[n] + (1.0 - b2) * dlogit[n] * dlogit[n];
          direction[n] = (velocity[n] / c1) / (std::sqrt(second[n] / c2) + kEps);
        }
      } else {
        for (std::size_t n = 0; n < velocity.size(); ++n) {
          velocity[n] = opts.momentum * velocity[n] + dlogit[n];
          direction[n] = velocity[n];
        }
      }
      pi.step(direction, opts.learning_rate);
    }
    if (!rec.consistent) rec.consistent = consistent_with(rec.program, sample.observed, cfg);

    const bool better = !have_best || (rec.consistent && !best.consistent) ||
                        (rec.consistent == best.consistent && rec.loss < best.final_loss);
    if (better) {
      best.program = rec.program;
      best.final_loss = rec.loss;
      best.consistent = rec.consistent;
      have_best = true;
    }
    lowest_loss = std::min(lowest_loss, rec.loss);
    best.best_loss_history.push_back(lowest_loss);
    best.restarts.push_back(std::move(rec));
    best.restarts_used = restart + 1;

    if (best.consistent) break;
    if (opts.max_restarts > 0 && best.restarts_used >= opts.max_restarts) break;
    if (elapsed() >= opts.timeout_seconds) break;
  }
  best.wall_time = elapsed();
  return best;
}

}  // namespace fuzzysynth
