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

#include "ucr/optim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "ucr/error.hpp"

namespace ucr {
namespace {

constexpr std::size_t kMaxDim = 5;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 output is fixed by the standard; the conversions to real
// numbers are done by hand so results do not depend on the library's
// distribution implementations.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  double Uniform01() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Normal() {
    const double u1 = 1.0 - Uniform01();  // (0, 1]
    const double u2 = Uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  AngleLe90 Angle() { return AngleLe90::FromRadians(-kHalfPi + kPi * Uniform01()); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(seed ^ SplitMix64(index + 0x51ed2701ULL));
}

struct Sample {
  std::array<double, kMaxDim> pred{};
  std::vector<std::array<double, kMaxDim>> noisy_targets;
};

Sample InitSample(const FitTask& task, const ResolverConfig& rcfg,
                  std::size_t index) {
  SampleRng rng(StreamSeed(task.seed, index));
  const std::size_t n = static_cast<std::size_t>(rcfg.dimension);
  Sample s;
  if (task.init == InitMode::kOnManifold) {
    const Encoding e = Encode(rng.Angle(), rcfg);
    std::copy(e.values().begin(), e.values().end(), s.pred.begin());
  } else {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s.pred[i] = rng.Normal();
      norm += s.pred[i] * s.pred[i];
    }
    norm = std::sqrt(norm);
    const double radius =
        task.init_scale * std::pow(rng.Uniform01(), 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      s.pred[i] = norm > 0.0 ? s.pred[i] / norm * radius : 0.0;
    }
  }
  const AngleLe90 clean = task.targets[index];
  s.noisy_targets.resize(task.noise_draws);
  for (auto& t : s.noisy_targets) {
    const AngleLe90 noisy =
        task.noise_sigma > 0.0
            ? AngleLe90::FromRadians(clean.radians() +
                                     task.noise_sigma * rng.Normal())
            : clean;
    const Encoding e = Encode(noisy, rcfg);
    std::copy(e.values().begin(), e.values().end(), t.begin());
  }
  return s;
}

}  // namespace

void FitTask::Validate() const {
  if (steps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "steps must be at least 1");
  }
  if (!(std::isfinite(learning_rate) && learning_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "learning rate must be finite and positive");
  }
  if (!(std::isfinite(init_scale) && init_scale > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "init scale must be finite and positive");
  }
  if (!(std::isfinite(noise_sigma) && noise_sigma >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "noise sigma must be finite and non-negative");
  }
  if (noise_draws < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "noise draws must be at least 1");
  }
}

Quantiles ComputeQuantiles(std::vector<double> values) {
  if (values.empty()) return {};
  std::sort(values.begin(), values.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return {at(0.1), at(0.5), at(0.9)};
}

FitReport FitEncodings(const FitTask& task, const ResolverConfig& rcfg,
                       const LossConfig& lcfg, const StepObserver& observer) {
  task.Validate();
  rcfg.Validate();
  lcfg.Validate(rcfg);
  if (rcfg.dimension == 1 && lcfg.lambda_uc != 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "one-dimensional fits cannot carry a unit-cycle weight");
  }

  const std::size_t n = static_cast<std::size_t>(rcfg.dimension);
  const std::size_t count = task.targets.size();
  std::vector<Sample> samples;
  samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    samples.push_back(InitSample(task, rcfg, i));
  }

  FitReport report;
  report.target_ae2 = rcfg.TargetSumSquares();
  report.loss_trajectory.reserve(task.steps);
  const double draw_weight = 1.0 / static_cast<double>(task.noise_draws);

  for (int step = 0; step < task.steps; ++step) {
    double loss_sum = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
      Sample& sample = samples[s];
      const std::span<const double> pred(sample.pred.data(), n);
      std::array<double, kMaxDim> g_reg{};
      std::array<double, kMaxDim> g_uc{};

      const bool invalid = IsInvalid(pred, lcfg);
      double loss = 0.0;
      if (lcfg.lambda_uc != 0.0) {
        loss += lcfg.lambda_uc * UnitCycleLoss(pred, rcfg, lcfg.uc_kind);
        AddUnitCycleGradient(pred, rcfg, lcfg.uc_kind, lcfg.lambda_uc,
                             std::span<double>(g_uc.data(), n));
      }
      if (!invalid && lcfg.lambda_reg != 0.0) {
        for (const auto& t : sample.noisy_targets) {
          const std::span<const double> target(t.data(), n);
          loss += lcfg.lambda_reg * draw_weight *
                  RegressionLoss(pred, target, lcfg.reg_kind);
          AddRegressionGradient(pred, target, lcfg.reg_kind,
                                lcfg.lambda_reg * draw_weight,
                                std::span<double>(g_reg.data(), n));
        }
      }
      if (!std::isfinite(loss)) {
        throw NumericError("objective diverged on sample " + std::to_string(s),
                           step);
      }
      if (observer) {
        LossGradient parts{std::vector<double>(g_reg.begin(), g_reg.begin() + n),
                           std::vector<double>(g_uc.begin(), g_uc.begin() + n),
                           std::vector<double>(n)};
        for (std::size_t i = 0; i < n; ++i) {
          parts.total[i] = parts.reg[i] + parts.uc[i];
        }
        observer(step, s, parts);
      }
      for (std::size_t i = 0; i < n; ++i) {
        sample.pred[i] -= task.learning_rate * (g_reg[i] + g_uc[i]);
      }
      loss_sum += loss;
    }
    report.loss_trajectory.push_back(count ? loss_sum / count : 0.0);
  }

  report.ae2.reserve(count);
  report.angle_error.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const std::span<const double> pred(samples[s].pred.data(), n);
    double ae2 = 0.0;
    for (double v : pred) ae2 += v * v;
    if (!std::isfinite(ae2)) {
      throw NumericError("final encoding is not finite on sample " +
                             std::to_string(s),
                         task.steps);
    }
    double err = kHalfPi;
    try {
      err = AngularDistance(Decode(pred, rcfg), task.targets[s]);
    } catch (const Error&) {
      // Undecodable (collapsed to the origin): count as the worst case.
    }
    report.ae2.push_back(ae2);
    report.angle_error.push_back(err);
  }
  report.ae2_quantiles = ComputeQuantiles(report.ae2);
  report.angle_error_quantiles = ComputeQuantiles(report.angle_error);
  return report;
}

std::vector<BoundaryRow> BoundaryDemo(std::span<const double> epsilons,
                                      const ResolverConfig& cfg) {
  std::vector<BoundaryRow> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons) {
    if (!(std::isfinite(eps) && eps > 0.0 && eps < kHalfPi)) {
      throw Error(ErrorCode::kDomain,
                  "boundary epsilon must lie in (0, pi/2)");
    }
    const AngleLe90 a = AngleLe90::FromRadians(-kHalfPi + eps);
    const AngleLe90 b = AngleLe90::FromRadians(kHalfPi - eps);
    rows.push_back({eps, std::fabs(a.radians() - b.radians()),
                    EncodingGap(a, b, cfg)});
  }
  return rows;
}

Histogram Ae2Histogram(const FitReport& report, int bins, double hi) {
  if (bins < 1) {
    throw Error(ErrorCode::kInvalidArgument, "histogram needs at least one bin");
  }
  Histogram h;
  h.lo = 0.0;
  if (hi > 0.0) {
    h.hi = hi;
  } else {
    h.hi = 2.0 * report.target_ae2;
    for (double v : report.ae2) h.hi = std::max(h.hi, v);
    if (h.hi <= 0.0) h.hi = 1.0;
  }
  h.counts.assign(bins, 0);
  const double width = h.hi / bins;
  for (double v : report.ae2) {
    if (v < h.lo || v > h.hi) continue;
    auto idx = static_cast<std::size_t>(std::floor(v / width));
    h.counts[std::min(idx, h.counts.size() - 1)] += 1;
  }
  return h;
}

double SignTestPValue(int wins, int trials) {
  if (trials <= 0 || wins <= 0) return 1.0;
  // log-space binomial tail; trials is small but keep it robust.
  double tail = 0.0;
  for (int k = wins; k <= trials; ++k) {
    const double log_term = std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(trials - k + 1.0) -
                            trials * std::log(2.0);
    tail += std::exp(log_term);
  }
  return std::min(tail, 1.0);
}

BiasStudy RunBiasStudy(const BiasStudyConfig& cfg, const ResolverConfig& rcfg,
                       const LossConfig& lcfg) {
  if (cfg.repetitions < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one repetition");
  }
  LossConfig baseline_cfg = lcfg;
  baseline_cfg.lambda_uc = cfg.baseline_lambda_uc;

  BiasStudy study;
  study.baseline_lambda_uc = cfg.baseline_lambda_uc;
  study.lambda_uc = lcfg.lambda_uc;
  const double target = rcfg.TargetSumSquares();
  auto median_dev = [target](const FitReport& r) {
    std::vector<double> dev(r.ae2.size());
    for (std::size_t i = 0; i < dev.size(); ++i) {
      dev[i] = std::fabs(r.ae2[i] - target);
    }
    return ComputeQuantiles(std::move(dev)).p50;
  };

  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    PairOutcome pair;
    pair.seed = SplitMix64(cfg.base.seed + static_cast<std::uint64_t>(rep));
    FitTask task = cfg.base;
    task.seed = pair.seed;
    task.targets.clear();
    SampleRng target_rng(StreamSeed(pair.seed, ~0ULL));
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      task.targets.push_back(target_rng.Angle());
    }
    pair.baseline = FitEncodings(task, rcfg, baseline_cfg);
    pair.constrained = FitEncodings(task, rcfg, lcfg);
    pair.baseline_median_ae2_dev = median_dev(pair.baseline);
    pair.constrained_median_ae2_dev = median_dev(pair.constrained);
    pair.ae2_win = pair.constrained_median_ae2_dev < pair.baseline_median_ae2_dev;
    pair.angle_win = pair.constrained.angle_error_quantiles.p50 <
                     pair.baseline.angle_error_quantiles.p50;
    study.ae2_wins += pair.ae2_win ? 1 : 0;
    study.angle_wins += pair.angle_win ? 1 : 0;
    study.pairs.push_back(std::move(pair));
  }
  study.ae2_p_value = SignTestPValue(study.ae2_wins, cfg.repetitions);
  study.angle_p_value = SignTestPValue(study.angle_wins, cfg.repetitions);
  return study;
}

}  // namespace ucr
