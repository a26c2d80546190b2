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

// Independent reference computations shared by the unit and acceptance tests.
// None of these call into the library's geometry or loss code.

#ifndef UCR_TESTS_ORACLES_HPP_
#define UCR_TESTS_ORACLES_HPP_

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace ucr::testing {

struct PlainBox {
  double cx, cy, w, h, theta;
};

// IoU by membership sampling on a stratified grid laid over box a. Every
// sample sits at a deterministic jittered position inside one grid cell.
inline double SampledIou(const PlainBox& a, const PlainBox& b,
                         std::size_t per_side) {
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  const double cb = std::cos(b.theta);
  const double sb = std::sin(b.theta);
  std::size_t hits = 0;
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  auto jitter = [&state] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  for (std::size_t i = 0; i < per_side; ++i) {
    for (std::size_t j = 0; j < per_side; ++j) {
      const double u = ((i + jitter()) / per_side - 0.5) * a.w;
      const double v = ((j + jitter()) / per_side - 0.5) * a.h;
      const double x = a.cx + c * u - s * v;
      const double y = a.cy + s * u + c * v;
      const double bu = cb * (x - b.cx) + sb * (y - b.cy);
      const double bv = -sb * (x - b.cx) + cb * (y - b.cy);
      if (std::abs(bu) <= b.w / 2 && std::abs(bv) <= b.h / 2) ++hits;
    }
  }
  const double area_a = a.w * a.h;
  const double inter =
      area_a * static_cast<double>(hits) / static_cast<double>(per_side * per_side);
  return inter / (area_a + b.w * b.h - inter);
}

// Central differences of f around x with step h.
inline std::vector<double> CentralDifference(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h) {
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double up = f(x);
    x[i] = saved - h;
    const double down = f(x);
    x[i] = saved;
    grad[i] = (up - down) / (2 * h);
  }
  return grad;
}

// 101-point interpolated AP written directly from its definition.
inline double ReferenceAp(const std::vector<bool>& tp, std::size_t n_gt) {
  std::vector<double> recall, precision;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < tp.size(); ++k) {
    if (tp[k]) ++hits;
    recall.push_back(static_cast<double>(hits) / n_gt);
    precision.push_back(static_cast<double>(hits) / (k + 1));
  }
  double sum = 0;
  for (int r = 0; r <= 100; ++r) {
    const double level = r / 100.0;
    double best = 0;
    for (std::size_t k = 0; k < tp.size(); ++k) {
      if (recall[k] >= level) best = std::max(best, precision[k]);
    }
    sum += best;
  }
  return sum / 101;
}

}  // namespace ucr::testing

#endif  // UCR_TESTS_ORACLES_HPP_
