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

#ifndef UCR_CODER_HPP_
#define UCR_CODER_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ucr/geometry.hpp"

namespace ucr {

// Selects the mapping family: the dimension n of the encoding space, the
// angular frequency applied to theta and the per-component amplitude s.
struct ResolverConfig {
  int dimension = 2;
  double angular_frequency = 2.0;
  double amplitude = 1.0;

  // Throws ucr::Error (kInvalidArgument) on n outside 1..5 or a non-positive
  // frequency/amplitude.
  void Validate() const;

  // A pi-wide le90 range maps onto at most one period.
  bool IsBijective() const;

  // Human-readable notes about legal but questionable settings.
  std::vector<std::string> Warnings() const;

  // Target value of sum(m_i^2) on the circle: s^2 for n = 2 and n*s^2/2 for
  // n >= 3. Zero for n = 1, which has no circle.
  double TargetSumSquares() const;
};

// The n-dimensional encoding vector (m_1 ... m_n).
class Encoding {
 public:
  Encoding() = default;
  explicit Encoding(std::vector<double> values) : values_(std::move(values)) {}
  Encoding(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double SumSquares() const;

  friend bool operator==(const Encoding&, const Encoding&) = default;

 private:
  std::vector<double> values_;
};

inline constexpr double kDecodeEpsilon = 1e-12;

// n = 1: (theta). n = 2: s*(cos wt, sin wt). n >= 3: the phase-shifted
// cosine family m_i = s*cos(w*theta + 2*pi*i/n), i = 1..n.
Encoding Encode(AngleLe90 theta, const ResolverConfig& cfg);

// Inverse of Encode. Scale-invariant for n >= 2. Throws ucr::Error (kDomain)
// when the phasor magnitude falls below kDecodeEpsilon, and kInvalidArgument
// on a length mismatch.
AngleLe90 Decode(std::span<const double> m, const ResolverConfig& cfg);
inline AngleLe90 Decode(const Encoding& m, const ResolverConfig& cfg) {
  return Decode(m.values(), cfg);
}

// Signed residuals of the constraint system for the configured dimension,
// first entry always sum(m^2) - TargetSumSquares():
//   n = 2: [sum m^2 - s^2]
//   n = 3: [sum m^2 - 3s^2/2, sum m]
//   n = 4: [sum m^2 - 2s^2, m1 + m3, m2 + m4]
//   n = 5: [sum m^2 - 5s^2/2, sum m, sum m^3]
// n = 1 yields an empty vector.
std::vector<double> ConstraintResiduals(std::span<const double> m,
                                        const ResolverConfig& cfg);

inline constexpr std::size_t kMaxConstraints = 3;

// Allocation-free variant for hot loops. Skips config validation; `out` must
// hold kMaxConstraints values. Returns the number of residuals written.
std::size_t ConstraintResidualsInto(std::span<const double> m,
                                    const ResolverConfig& cfg,
                                    std::span<double> out);

double EncodingGap(AngleLe90 a, AngleLe90 b, const ResolverConfig& cfg);

}  // namespace ucr

#endif  // UCR_CODER_HPP_
