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

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "fuzzysynth/config.hpp"
#include "fuzzysynth/dsl.hpp"
#include "fuzzysynth/sample.hpp"
#include "fuzzysynth/state.hpp"

namespace fuzzysynth {

inline constexpr double kLogClamp = 1e-12;

// Per-timestep function distribution, parametrized by unconstrained logits
// with a row-wise softmax. Masked entries have probability exactly 0 and
// receive no gradient.
class PolicyMatrix {
 public:
  PolicyMatrix() = default;
  // `logits` is row-major (steps, kNumFunctions). Throws ValidationError on
  // size mismatch or non-finite logits.
  PolicyMatrix(int steps, std::vector<double> logits);

  static PolicyMatrix random(int steps, std::mt19937_64& rng);
  // Logit `margin` on the program's function, 0 elsewhere.
  static PolicyMatrix one_hot(const Program& p, double margin = 50.0);

  int steps() const { return steps_; }
  std::span<const double> logits() const { return logits_; }
  std::span<const double> probabilities() const { return probs_; }
  double logit(int t, int s) const { return logits_[t * kNumFunctions + s]; }
  double prob(int t, int s) const { return probs_[t * kNumFunctions + s]; }

  // Exclude head and tail from every step but the last.
  void mask_list_reducers_before_last();
  bool masked(int t, int s) const { return !mask_.empty() && mask_[t * kNumFunctions + s]; }

  // logits -= rate * direction, then refresh probabilities.
  void step(std::span<const double> direction, double rate);

 private:
  void refresh();

  int steps_ = 0;
  std::vector<double> logits_;
  std::vector<double> probs_;
  std::vector<char> mask_;
};

// Row-wise argmax; ties go to the lowest function index.
Program extract_program(std::span<const double> probs, int steps);
inline Program extract_program(const PolicyMatrix& pi) {
  return extract_program(pi.probabilities(), pi.steps());
}

// Psi_(0) .. Psi_(T).
struct Trajectory {
  std::vector<BatchState> states;
};

// Superposed execution: Psi_(t) = sum_s probs[t, s] * f_s(Psi_(t-1)) per
// example. `probs` is row-major (steps, kNumFunctions) with rows summing to 1.
Trajectory forward(std::span<const double> probs, int steps, const BatchState& input,
                   const FunctionTables& tables);
inline Trajectory forward(const PolicyMatrix& pi, const BatchState& input,
                          const FunctionTables& tables) {
  return forward(pi.probabilities(), pi.steps(), input, tables);
}

// Ground-truth tokens of a sharp, non-null target batch.
class Target {
 public:
  // Throws ValidationError if an example is null, empty or non-sharp.
  explicit Target(const BatchState& truth);

  struct Token {
    int example;
    std::size_t offset;  // flat index within the example slice
  };
  std::span<const Token> tokens() const { return tokens_; }
  int examples() const { return examples_; }
  // N: number of ground-truth tokens outside the null row.
  double count() const { return static_cast<double>(tokens_.size()); }

 private:
  std::vector<Token> tokens_;
  int examples_ = 0;
};

// Clamped cross-entropy of the output against the ground-truth tokens.
double loss(const BatchState& output, const Target& target);
double loss(const BatchState& output, const BatchState& truth);

// dL/dtheta, row-major (steps, kNumFunctions), by reverse-mode sweep through
// the linear forward pass followed by the softmax Jacobian.
std::vector<double> gradient(const PolicyMatrix& pi, const Trajectory& traj, const Target& target,
                             const FunctionTables& tables);
// dL/dpi without the softmax chain.
std::vector<double> probability_gradient(std::span<const double> probs, int steps,
                                         const Trajectory& traj, const Target& target,
                                         const FunctionTables& tables);

enum class Optimizer {
  kGradientDescent,  // theta -= lr * (momentum * velocity + grad)
  kAdam,             // bias-corrected Adam
};

struct SynthOptions {
  double timeout_seconds = 5.0;
  double learning_rate = 0.2;
  Optimizer optimizer = Optimizer::kGradientDescent;
  // Heavy-ball coefficient for kGradientDescent; 0 is plain descent.
  double momentum = 0.0;
  // Near a solution the gradient shrinks with the loss; a short second-moment
  // memory (beta2 around 0.9) keeps Adam's steps from collapsing with it.
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  int restart_iterations = 200;
  double convergence_loss = 1e-9;
  // Stop after this many restarts even if time remains; 0 means unbounded.
  int max_restarts = 0;
  // Test the argmax program against the examples after every step.
  bool check_argmax_each_step = true;
  // Forbid head/tail before the last step.
  bool structural_prior = false;
  // Logits for the first restart; later restarts draw fresh N(0, 1) logits.
  std::optional<PolicyMatrix> init;
  std::uint64_t seed = 0;
};

struct RestartRecord {
  Program program;
  double loss = 0.0;
  int iterations = 0;
  bool converged = false;  // loss reached convergence_loss
  bool consistent = false;
};

struct SynthesisResult {
  Program program;
  double final_loss = 0.0;
  bool consistent = false;
  int restarts_used = 0;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
  // Best-so-far loss after each restart; non-increasing.
  std::vector<double> best_loss_history;
  std::vector<RestartRecord> restarts;
};

// Gradient descent with random restarts until a consistent program is found
// or the wall-clock budget runs out. Throws ValidationError for a
// non-positive timeout, an empty sample or an init policy of the wrong length.
SynthesisResult synthesize(const Sample& sample, const Config& cfg, const SynthOptions& opts);
SynthesisResult synthesize(const Sample& sample, const FunctionTables& tables,
                           const SynthOptions& opts);

}  // namespace fuzzysynth
