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


#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ucr/coder.hpp"
#include "ucr/error.hpp"

namespace ucr {
namespace {

ResolverConfig Config(int n, double omega = 2.0, double s = 1.0) {
  return ResolverConfig{n, omega, s};
}

std::vector<AngleLe90> Grid(int count) {
  std::vector<AngleLe90> out;
  for (int k = 0; k < count; ++k) {
    out.push_back(AngleLe90::FromRadians(-kHalfPi + kPi * (k + 0.5) / count));
  }
  return out;
}

double MaxAbs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

TEST(ResolverConfigTest, Validation) {
  EXPECT_NO_THROW(Config(2).Validate());
  EXPECT_THROW(Config(0).Validate(), Error);
  EXPECT_THROW(Config(6).Validate(), Error);
  EXPECT_THROW(Config(3, 0.0).Validate(), Error);
  EXPECT_THROW(Config(3, 2.0, -1.0).Validate(), Error);
  EXPECT_TRUE(Config(3).Warnings().empty());
  EXPECT_FALSE(Config(3, 1.0).Warnings().empty());
  EXPECT_FALSE(Config(3, 4.0).IsBijective());
  EXPECT_DOUBLE_EQ(Config(3, 2, 2).TargetSumSquares(), 6.0);
  EXPECT_DOUBLE_EQ(Config(2, 2, 2).TargetSumSquares(), 4.0);
}

TEST(EncodeTest, KnownValues) {
  const auto zero = AngleLe90::FromRadians(0.0);
  const Encoding e2 = Encode(zero, Config(2));
  EXPECT_EQ(e2, (Encoding{1.0, 0.0}));
  const Encoding q = Encode(AngleLe90::FromRadians(kPi / 4), Config(2));
  EXPECT_NEAR(q[0], 0.0, 1e-15);
  EXPECT_NEAR(q[1], 1.0, 1e-15);
  const Encoding e3 = Encode(zero, Config(3));
  EXPECT_NEAR(e3[0], -0.5, 1e-15);
  EXPECT_NEAR(e3[1], -0.5, 1e-15);
  EXPECT_NEAR(e3[2], 1.0, 1e-15);
  const Encoding e1 = Encode(AngleLe90::FromRadians(0.3), Config(1));
  EXPECT_EQ(e1, (Encoding{0.3}));
}

TEST(EncodeTest, ResidualsVanishOnManifold) {
  for (int n = 2; n <= 5; ++n) {
    for (double s : {1.0, 2.7}) {
      const auto cfg = Config(n, 2.0, s);
      double worst = 0;
      for (AngleLe90 t : Grid(10000)) {
        worst = std::max(worst, MaxAbs(ConstraintResiduals(Encode(t, cfg).values(), cfg)));
      }
      EXPECT_LT(worst, 1e-9) << "n=" << n << " s=" << s;
    }
  }
}

TEST(EncodeTest, ResidualCounts) {
  EXPECT_EQ(ConstraintResiduals(std::vector<double>{1, 0}, Config(2)).size(), 1u);
  EXPECT_EQ(ConstraintResiduals(std::vector<double>{1, 0, 0}, Config(3)).size(), 2u);
  EXPECT_EQ(ConstraintResiduals(std::vector<double>{1, 0, 0, 0}, Config(4)).size(), 3u);
  EXPECT_EQ(ConstraintResiduals(std::vector<double>{1, 0, 0, 0, 0}, Config(5)).size(), 3u);
  EXPECT_THROW(ConstraintResiduals(std::vector<double>{1, 0}, Config(3)), Error);
}

TEST(EncodeTest, HandResiduals) {
  // (2,0): sum of squares 4 against 1.
  EXPECT_EQ(ConstraintResiduals(std::vector<double>{2, 0}, Config(2)),
            (std::vector<double>{3.0}));
  // n=4 pairs: m1+m3 and m2+m4.
  const auto r4 = ConstraintResiduals(std::vector<double>{1, 2, 3, 4}, Config(4));
  EXPECT_EQ(r4, (std::vector<double>{30 - 2, 4, 6}));
  // n=5 adds the cubic sum.
  const auto r5 =
      ConstraintResiduals(std::vector<double>{1, 1, 1, 0, 0}, Config(5));
  EXPECT_EQ(r5, (std::vector<double>{3 - 2.5, 3, 3}));
}

TEST(EncodeTest, OrthonormalBasisFormIsReflectedPhaseFamily) {
  // r (cos phi u + sin phi v) with u = (1,1,-2)/sqrt6, v = (-1,1,0)/sqrt2
  // and r^2 = 3/2 lands on the same circle as the phase family, at phase
  // pi - phi.
  const double r = std::sqrt(1.5);
  const auto cfg = Config(3);
  for (int k = 0; k < 64; ++k) {
    const double phi = -kPi + 2 * kPi * k / 64;
    const double c = std::cos(phi), s = std::sin(phi);
    const std::vector<double> basis = {
        r * (c / std::sqrt(6.0) - s / std::sqrt(2.0)),
        r * (c / std::sqrt(6.0) + s / std::sqrt(2.0)),
        r * (-2 * c / std::sqrt(6.0))};
    EXPECT_LT(MaxAbs(ConstraintResiduals(basis, cfg)), 1e-12);
    const Encoding phase = Encode(NormalizeAngle((kPi - phi) / 2), cfg);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(basis[i], phase[i], 1e-12);
  }
}

TEST(DecodeTest, RoundTrip) {
  for (int n = 1; n <= 5; ++n) {
    const auto cfg = Config(n);
    for (AngleLe90 t : Grid(10000)) {
      const AngleLe90 back = Decode(Encode(t, cfg), cfg);
      ASSERT_LT(AngularDistance(back, t), 1e-9) << "n=" << n;
    }
  }
}

TEST(DecodeTest, ScaleInvariant) {
  for (int n = 2; n <= 5; ++n) {
    const auto cfg = Config(n);
    for (AngleLe90 t : Grid(997)) {
      Encoding m = Encode(t, cfg);
      for (double c : {0.5, 2.0, 10.0}) {
        Encoding scaled = m;
        for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] *= c;
        ASSERT_LT(AngularDistance(Decode(scaled, cfg), t), 1e-9);
      }
    }
  }
}

TEST(DecodeTest, LowerFrequencyRoundTrips) {
  const auto cfg = Config(3, 1.0);
  for (AngleLe90 t : Grid(1000)) {
    EXPECT_LT(AngularDistance(Decode(Encode(t, cfg), cfg), t), 1e-9);
  }
}

TEST(DecodeTest, DegenerateInputsThrow) {
  try {
    Decode(std::vector<double>{0, 0}, Config(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
  }
  // Balanced vector: zero phasor for n = 3.
  EXPECT_THROW(Decode(std::vector<double>{1, 1, 1}, Config(3)), Error);
  EXPECT_THROW(Decode(std::vector<double>{1, 0}, Config(3)), Error);
  EXPECT_THROW(Decode(std::vector<double>{NAN, 0}, Config(2)), Error);
}

TEST(BoundaryTest, EndpointsMeet) {
  for (int n = 2; n <= 5; ++n) {
    const auto cfg = Config(n);
    const double eps = 1e-7;
    const double gap = EncodingGap(AngleLe90::FromRadians(-kHalfPi + eps),
                                   AngleLe90::FromRadians(kHalfPi - eps), cfg);
    EXPECT_LT(gap, 1e-6) << n;
  }
  const double gap1 = EncodingGap(AngleLe90::FromRadians(-kHalfPi + 1e-7),
                                  AngleLe90::FromRadians(kHalfPi - 1e-7),
                                  Config(1));
  EXPECT_GT(gap1, 3.14);
}

}  // namespace
}  // namespace ucr
