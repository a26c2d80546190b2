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

#include "ucr/coder.hpp"

#include <cmath>
#include <complex>

#include "ucr/error.hpp"

namespace ucr {
namespace {

void CheckLength(std::span<const double> m, const ResolverConfig& cfg) {
  if (m.size() != static_cast<std::size_t>(cfg.dimension)) {
    throw Error(ErrorCode::kInvalidArgument,
                "encoding has " + std::to_string(m.size()) +
                    " components, resolver expects " +
                    std::to_string(cfg.dimension));
  }
}

double SumSquares(std::span<const double> m) {
  double acc = 0.0;
  for (double v : m) acc += v * v;
  return acc;
}

}  // namespace

void ResolverConfig::Validate() const {
  if (dimension < 1 || dimension > 5) {
    throw Error(ErrorCode::kInvalidArgument,
                "dimension must be in 1..5, got " + std::to_string(dimension));
  }
  if (!(std::isfinite(angular_frequency) && angular_frequency > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "angular frequency must be finite and positive");
  }
  if (!(std::isfinite(amplitude) && amplitude > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "amplitude must be finite and positive");
  }
}

bool ResolverConfig::IsBijective() const {
  return dimension == 1 || angular_frequency * kPi <= 2.0 * kPi;
}

std::vector<std::string> ResolverConfig::Warnings() const {
  std::vector<std::string> out;
  if (!IsBijective()) {
    out.push_back("angular frequency " + std::to_string(angular_frequency) +
                  " wraps the le90 range more than once; decode is not "
                  "bijective");
  } else if (dimension >= 2 && angular_frequency < 2.0) {
    out.push_back("angular frequency below 2 leaves the le90 endpoints "
                  "apart on the circle; the boundary stays discontinuous");
  }
  return out;
}

double ResolverConfig::TargetSumSquares() const {
  const double s2 = amplitude * amplitude;
  switch (dimension) {
    case 1:
      return 0.0;
    case 2:
      return s2;
    default:
      return 0.5 * dimension * s2;
  }
}

double Encoding::SumSquares() const { return ucr::SumSquares(values_); }

Encoding Encode(AngleLe90 theta, const ResolverConfig& cfg) {
  cfg.Validate();
  const int n = cfg.dimension;
  const double phase = cfg.angular_frequency * theta.radians();
  std::vector<double> m(n);
  if (n == 1) {
    m[0] = theta.radians();
  } else if (n == 2) {
    m[0] = cfg.amplitude * std::cos(phase);
    m[1] = cfg.amplitude * std::sin(phase);
  } else {
    for (int i = 1; i <= n; ++i) {
      m[i - 1] = cfg.amplitude * std::cos(phase + 2.0 * kPi * i / n);
    }
  }
  return Encoding(std::move(m));
}

AngleLe90 Decode(std::span<const double> m, const ResolverConfig& cfg) {
  cfg.Validate();
  CheckLength(m, cfg);
  const int n = cfg.dimension;
  if (n == 1) return AngleLe90::FromRadians(m[0]);

  std::complex<double> z;
  if (n == 2) {
    z = {m[0], m[1]};
  } else {
    // m_i = s cos(phi + a_i) => sum_i m_i e^{-j a_i} = (n s / 2) e^{j phi}.
    for (int i = 1; i <= n; ++i) {
      z += m[i - 1] * std::polar(1.0, -2.0 * kPi * i / n);
    }
  }
  if (std::abs(z) < kDecodeEpsilon) {
    throw Error(ErrorCode::kDomain,
                "ambiguous encoding: phasor magnitude below decode floor");
  }
  return AngleLe90::FromRadians(std::arg(z) / cfg.angular_frequency);
}

std::size_t ConstraintResidualsInto(std::span<const double> m,
                                    const ResolverConfig& cfg,
                                    std::span<double> out) {
  CheckLength(m, cfg);
  const int n = cfg.dimension;
  if (n == 1) return 0;
  std::size_t k = 0;
  out[k++] = SumSquares(m) - cfg.TargetSumSquares();
  if (n == 3 || n == 5) {
    double sum = 0.0;
    for (double v : m) sum += v;
    out[k++] = sum;
  }
  if (n == 4) {
    out[k++] = m[0] + m[2];
    out[k++] = m[1] + m[3];
  }
  if (n == 5) {
    double cubes = 0.0;
    for (double v : m) cubes += v * v * v;
    out[k++] = cubes;
  }
  return k;
}

std::vector<double> ConstraintResiduals(std::span<const double> m,
                                        const ResolverConfig& cfg) {
  cfg.Validate();
  std::vector<double> r(kMaxConstraints);
  r.resize(ConstraintResidualsInto(m, cfg, r));
  return r;
}

double EncodingGap(AngleLe90 a, AngleLe90 b, const ResolverConfig& cfg) {
  const Encoding ea = Encode(a, cfg);
  const Encoding eb = Encode(b, cfg);
  double acc = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    const double d = ea[i] - eb[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace ucr
