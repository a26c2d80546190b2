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

#include "ucr/loss.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "ucr/error.hpp"

namespace ucr {
namespace {

double Penalty(double r, DeviationKind kind) {
  return kind == DeviationKind::kAbsolute ? std::fabs(r) : r * r;
}

double PenaltySlope(double r, DeviationKind kind) {
  if (kind == DeviationKind::kSquared) return 2.0 * r;
  return r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
}

bool FiniteNonNegative(double v) { return std::isfinite(v) && v >= 0.0; }

void RequireConstraints(const ResolverConfig& cfg) {
  if (cfg.dimension == 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "one-dimensional encodings have no unit-cycle constraint");
  }
}

}  // namespace

std::string_view ToString(DeviationKind kind) {
  return kind == DeviationKind::kAbsolute ? "l1" : "l2";
}

DeviationKind ParseDeviationKind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "l1" || lower == "absolute" || lower == "absolutedeviation") {
    return DeviationKind::kAbsolute;
  }
  if (lower == "l2" || lower == "mse" || lower == "squared" ||
      lower == "squareddeviation") {
    return DeviationKind::kSquared;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown loss kind '" + std::string(text) + "'");
}

void LossConfig::Validate(const ResolverConfig& resolver) const {
  if (!FiniteNonNegative(lambda_reg) || !FiniteNonNegative(lambda_uc) ||
      !FiniteNonNegative(m_invalid)) {
    throw Error(ErrorCode::kInvalidArgument,
                "loss weights and m_invalid must be finite and non-negative");
  }
  if (resolver.dimension >= 2 && m_invalid > resolver.TargetSumSquares()) {
    throw Error(ErrorCode::kInvalidArgument,
                "m_invalid " + std::to_string(m_invalid) +
                    " exceeds the target sum of squares " +
                    std::to_string(resolver.TargetSumSquares()));
  }
}

double UnitCycleLoss(std::span<const double> m, const ResolverConfig& cfg,
                     DeviationKind kind) {
  RequireConstraints(cfg);
  cfg.Validate();
  std::array<double, kMaxConstraints> res{};
  const std::size_t k = ConstraintResidualsInto(m, cfg, res);
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += Penalty(res[i], kind);
  return acc;
}

bool IsInvalid(std::span<const double> m, const LossConfig& cfg) {
  double ss = 0.0;
  for (double v : m) ss += v * v;
  return ss < cfg.m_invalid;
}

double RegressionLoss(std::span<const double> pred,
                      std::span<const double> target, DeviationKind kind) {
  if (pred.size() != target.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "regression loss: dimension mismatch (" +
                    std::to_string(pred.size()) + " vs " +
                    std::to_string(target.size()) + ")");
  }
  if (pred.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    acc += Penalty(pred[i] - target[i], kind);
  }
  return acc / static_cast<double>(pred.size());
}

LossBreakdown TotalLossEncoded(std::span<const double> pred,
                               std::span<const double> target,
                               const ResolverConfig& rcfg,
                               const LossConfig& lcfg) {
  LossBreakdown out;
  out.invalid = IsInvalid(pred, lcfg);
  out.reg = out.invalid ? 0.0 : RegressionLoss(pred, target, lcfg.reg_kind);
  if (rcfg.dimension > 1 || lcfg.lambda_uc != 0.0) {
    out.uc = UnitCycleLoss(pred, rcfg, lcfg.uc_kind);
  }
  out.total = out.cls + lcfg.lambda_reg * out.reg + lcfg.lambda_uc * out.uc;
  return out;
}

LossBreakdown TotalLoss(std::span<const double> pred, AngleLe90 target,
                        const ResolverConfig& rcfg, const LossConfig& lcfg) {
  const Encoding t = Encode(target, rcfg);
  return TotalLossEncoded(pred, t.values(), rcfg, lcfg);
}

void AddUnitCycleGradient(std::span<const double> m, const ResolverConfig& cfg,
                          DeviationKind kind, double weight,
                          std::span<double> grad) {
  RequireConstraints(cfg);
  std::array<double, kMaxConstraints> res{};
  ConstraintResidualsInto(m, cfg, res);
  const std::size_t n = m.size();

  // Row 0 of the Jacobian is 2 m_i for every dimension.
  const double norm_slope = weight * PenaltySlope(res[0], kind);
  for (std::size_t i = 0; i < n; ++i) grad[i] += norm_slope * 2.0 * m[i];

  if (n == 3 || n == 5) {
    const double sum_slope = weight * PenaltySlope(res[1], kind);
    for (std::size_t i = 0; i < n; ++i) grad[i] += sum_slope;
  }
  if (n == 4) {
    const double odd = weight * PenaltySlope(res[1], kind);
    const double even = weight * PenaltySlope(res[2], kind);
    grad[0] += odd;
    grad[2] += odd;
    grad[1] += even;
    grad[3] += even;
  }
  if (n == 5) {
    const double cube_slope = weight * PenaltySlope(res[2], kind);
    for (std::size_t i = 0; i < n; ++i) grad[i] += cube_slope * 3.0 * m[i] * m[i];
  }
}

void AddRegressionGradient(std::span<const double> pred,
                           std::span<const double> target, DeviationKind kind,
                           double weight, std::span<double> grad) {
  if (pred.size() != target.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "gradient: dimension mismatch between prediction and target");
  }
  const double scale = weight / static_cast<double>(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    grad[i] += scale * PenaltySlope(pred[i] - target[i], kind);
  }
}

LossGradient TotalLossGradientParts(std::span<const double> pred,
                                    std::span<const double> target,
                                    const ResolverConfig& rcfg,
                                    const LossConfig& lcfg) {
  if (pred.size() != target.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "gradient: dimension mismatch between prediction and target");
  }
  const std::size_t n = pred.size();
  LossGradient g{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                 std::vector<double>(n, 0.0)};
  if (!IsInvalid(pred, lcfg) && lcfg.lambda_reg != 0.0) {
    AddRegressionGradient(pred, target, lcfg.reg_kind, lcfg.lambda_reg, g.reg);
  }
  if (lcfg.lambda_uc != 0.0) {
    rcfg.Validate();
    AddUnitCycleGradient(pred, rcfg, lcfg.uc_kind, lcfg.lambda_uc, g.uc);
  }
  for (std::size_t i = 0; i < n; ++i) g.total[i] = g.reg[i] + g.uc[i];
  return g;
}

std::vector<double> TotalLossGradient(std::span<const double> pred,
                                      AngleLe90 target,
                                      const ResolverConfig& rcfg,
                                      const LossConfig& lcfg) {
  const Encoding t = Encode(target, rcfg);
  return TotalLossGradientParts(pred, t.values(), rcfg, lcfg).total;
}

}  // namespace ucr
