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

#ifndef UCR_LOSS_HPP_
#define UCR_LOSS_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ucr/coder.hpp"

namespace ucr {

// Per-term penalty applied to a residual r: |r| or r^2.
enum class DeviationKind { kAbsolute, kSquared };

std::string_view ToString(DeviationKind kind);
// Accepts "l1"/"absolute" and "l2"/"mse"/"squared", case-insensitive.
DeviationKind ParseDeviationKind(std::string_view text);

struct LossConfig {
  double lambda_reg = 1.0;
  double lambda_uc = 0.05;
  double m_invalid = 0.2;
  DeviationKind uc_kind = DeviationKind::kAbsolute;
  DeviationKind reg_kind = DeviationKind::kAbsolute;

  // Weights finite and non-negative; the invalid disc may not extend past
  // the target circle (m_invalid <= TargetSumSquares()).
  void Validate(const ResolverConfig& resolver) const;
};

// Composition of the total loss. cls is always 0 here: there is no
// classification head, but the slot keeps the detector-loss shape
// cls + lambda_reg * reg + lambda_uc * uc.
struct LossBreakdown {
  double cls = 0.0;
  double uc = 0.0;
  double reg = 0.0;
  double total = 0.0;
  bool invalid = false;
};

// Sum of per-constraint penalties on ConstraintResiduals. Throws for n = 1.
double UnitCycleLoss(std::span<const double> m, const ResolverConfig& cfg,
                     DeviationKind kind = DeviationKind::kAbsolute);

// True iff sum(m^2) < m_invalid.
bool IsInvalid(std::span<const double> m, const LossConfig& cfg);

// Mean over components of the elementwise penalty.
double RegressionLoss(std::span<const double> pred,
                      std::span<const double> target,
                      DeviationKind kind = DeviationKind::kAbsolute);

LossBreakdown TotalLoss(std::span<const double> pred, AngleLe90 target,
                        const ResolverConfig& rcfg, const LossConfig& lcfg);

// Same as TotalLoss with the target already encoded.
LossBreakdown TotalLossEncoded(std::span<const double> pred,
                               std::span<const double> target,
                               const ResolverConfig& rcfg,
                               const LossConfig& lcfg);

// Gradient split by term, already weighted by lambda. reg is zero whenever
// the prediction lies in the invalid region.
struct LossGradient {
  std::vector<double> reg;
  std::vector<double> uc;
  std::vector<double> total;
};

// grad += weight * d(UnitCycleLoss)/dm, without allocating.
void AddUnitCycleGradient(std::span<const double> m, const ResolverConfig& cfg,
                          DeviationKind kind, double weight,
                          std::span<double> grad);

// grad += weight * d(RegressionLoss)/d(pred), without allocating.
void AddRegressionGradient(std::span<const double> pred,
                           std::span<const double> target, DeviationKind kind,
                           double weight, std::span<double> grad);

LossGradient TotalLossGradientParts(std::span<const double> pred,
                                    std::span<const double> target,
                                    const ResolverConfig& rcfg,
                                    const LossConfig& lcfg);

// d(total)/d(m_i). Subgradient 0 at every |x| kink.
std::vector<double> TotalLossGradient(std::span<const double> pred,
                                      AngleLe90 target,
                                      const ResolverConfig& rcfg,
                                      const LossConfig& lcfg);

}  // namespace ucr

#endif  // UCR_LOSS_HPP_
