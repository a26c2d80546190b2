// Copyright 2026 The UCR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UCR_OPTIM_HPP_
#define UCR_OPTIM_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ucr/coder.hpp"
#include "ucr/loss.hpp"

namespace ucr {

enum class InitMode {
  kUniformBall,  // uniform in the n-ball of radius init_scale
  kOnManifold,   // Encode() of a uniformly random angle
};

// One free encoding per target, fitted by plain full-batch gradient descent.
// Each sample sees `noise_draws` noisy copies of its target angle (wrapped
// Gaussian, drawn once); the per-sample objective is the mean total loss
// over those copies.
struct FitTask {
  std::vector<AngleLe90> targets;
  double noise_sigma = 0.0;
  double init_scale = 1.0;
  int steps = 500;
  double learning_rate = 0.05;
  std::uint64_t seed = 0;
  int noise_draws = 16;
  InitMode init = InitMode::kUniformBall;

  void Validate() const;
};

struct Quantiles {
  double p10 = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
};

// Linear interpolation between order statistics. Empty input yields zeros.
Quantiles ComputeQuantiles(std::vector<double> values);

struct FitReport {
  std::vector<double> ae2;          // final sum of squares per sample
  std::vector<double> angle_error;  // |decoded - clean target|, period pi
  std::vector<double> loss_trajectory;  // mean objective before each step
  Quantiles ae2_quantiles;
  Quantiles angle_error_quantiles;
  double target_ae2 = 1.0;

  std::size_t size() const { return ae2.size(); }
};

// Called once per (step, sample) with the gradient about to be applied.
using StepObserver =
    std::function<void(int step, std::size_t sample, const LossGradient&)>;

// Deterministic in (task, configs). Throws NumericError carrying the step
// index if the objective stops being finite.
FitReport FitEncodings(const FitTask& task, const ResolverConfig& rcfg,
                       const LossConfig& lcfg,
                       const StepObserver& observer = {});

struct BoundaryRow {
  double epsilon = 0.0;
  double loss_1d = 0.0;
  double gap = 0.0;
};

// theta1 = -pi/2 + eps, theta2 = pi/2 - eps for each eps.
std::vector<BoundaryRow> BoundaryDemo(std::span<const double> epsilons,
                                      const ResolverConfig& cfg);

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::size_t> counts;

  double BinWidth() const {
    return counts.empty() ? 0.0 : (hi - lo) / counts.size();
  }
};

// Uniform bins over [0, hi). hi <= 0 picks max(2 * target, max AE^2) so the
// target value always sits inside the range. The maximum lands in the last
// bin.
Histogram Ae2Histogram(const FitReport& report, int bins, double hi = 0.0);

// Paired comparison: every repetition draws fresh targets, inits and noise
// from one seed, then runs the baseline weight and the configured weight on
// identical inputs.
struct BiasStudyConfig {
  FitTask base;  // targets are ignored; they are drawn per repetition
  int repetitions = 20;
  std::size_t samples = 256;
  double baseline_lambda_uc = 0.0;
};

struct PairOutcome {
  std::uint64_t seed = 0;
  FitReport baseline;
  FitReport constrained;
  double baseline_median_ae2_dev = 0.0;
  double constrained_median_ae2_dev = 0.0;
  bool ae2_win = false;
  bool angle_win = false;
};

struct BiasStudy {
  std::vector<PairOutcome> pairs;
  double baseline_lambda_uc = 0.0;
  double lambda_uc = 0.0;
  int ae2_wins = 0;
  int angle_wins = 0;
  // One-sided sign-test p-values, P(X >= wins) under Binomial(reps, 1/2).
  double ae2_p_value = 1.0;
  double angle_p_value = 1.0;
};

BiasStudy RunBiasStudy(const BiasStudyConfig& cfg, const ResolverConfig& rcfg,
                       const LossConfig& lcfg);

double SignTestPValue(int wins, int trials);

}  // namespace ucr

#endif  // UCR_OPTIM_HPP_
