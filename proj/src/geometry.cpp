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

#include "ucr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ucr/error.hpp"

namespace ucr {
namespace {

constexpr double kEmptyArea = 1e-12;

double Cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Polygon CounterClockwise(std::span<const Point2> polygon) {
  Polygon out(polygon.begin(), polygon.end());
  if (SignedArea(out) < 0.0) std::reverse(out.begin(), out.end());
  return out;
}

Point2 LineIntersection(const Point2& p, const Point2& q, const Point2& a,
                        const Point2& b) {
  // p->q crosses the infinite line a->b; the callers guarantee the two
  // endpoints lie on opposite sides, so the denominator is nonzero.
  const double dp = Cross(a, b, p);
  const double dq = Cross(a, b, q);
  const double t = dp / (dp - dq);
  return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
}

}  // namespace

AngleLe90 AngleLe90::FromRadians(double raw) {
  if (!std::isfinite(raw)) {
    throw Error(ErrorCode::kDomain,
                "angle must be finite, got " + std::to_string(raw));
  }
  if (raw >= -kHalfPi && raw < kHalfPi) return AngleLe90(raw);
  double r = std::fmod(raw + kHalfPi, kPi);
  if (r < 0.0) r += kPi;
  double wrapped = r - kHalfPi;
  if (wrapped >= kHalfPi) wrapped -= kPi;
  if (wrapped < -kHalfPi) wrapped = -kHalfPi;
  return AngleLe90(wrapped);
}

AngleLe90 NormalizeAngle(double raw) { return AngleLe90::FromRadians(raw); }

double AngularDistance(AngleLe90 a, AngleLe90 b) {
  const double d = std::fabs(a.radians() - b.radians());  // in [0, pi)
  return std::min(d, kPi - d);
}

RotatedBox RotatedBox::Make(double cx, double cy, double w, double h,
                            double theta) {
  if (!std::isfinite(cx) || !std::isfinite(cy)) {
    throw Error(ErrorCode::kDomain, "box center must be finite");
  }
  if (!(std::isfinite(w) && w > 0.0) || !(std::isfinite(h) && h > 0.0)) {
    throw Error(ErrorCode::kDomain, "box sides must be finite and positive");
  }
  return RotatedBox{cx, cy, w, h, AngleLe90::FromRadians(theta)};
}

double SignedArea(std::span<const Point2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = polygon[i];
    const Point2& q = polygon[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

QuadPolygon RboxToPolygon(const RotatedBox& box) {
  const double c = std::cos(box.theta.radians());
  const double s = std::sin(box.theta.radians());
  const double hw = 0.5 * box.w;
  const double hh = 0.5 * box.h;
  const std::array<Point2, 4> local = {
      Point2{-hw, -hh}, Point2{hw, -hh}, Point2{hw, hh}, Point2{-hw, hh}};
  QuadPolygon out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = {box.cx + local[i].x * c - local[i].y * s,
              box.cy + local[i].x * s + local[i].y * c};
  }
  return out;
}

Polygon ConvexIntersection(std::span<const Point2> subject,
                           std::span<const Point2> clip) {
  if (subject.size() < 3 || clip.size() < 3) return {};
  Polygon output = CounterClockwise(subject);
  const Polygon window = CounterClockwise(clip);

  Polygon input;
  for (std::size_t e = 0; e < window.size() && !output.empty(); ++e) {
    const Point2& a = window[e];
    const Point2& b = window[(e + 1) % window.size()];
    input.swap(output);
    output.clear();
    for (std::size_t i = 0; i < input.size(); ++i) {
      const Point2& cur = input[i];
      const Point2& prev = input[(i + input.size() - 1) % input.size()];
      const bool cur_in = Cross(a, b, cur) >= 0.0;
      const bool prev_in = Cross(a, b, prev) >= 0.0;
      if (cur_in) {
        if (!prev_in) output.push_back(LineIntersection(prev, cur, a, b));
        output.push_back(cur);
      } else if (prev_in) {
        output.push_back(LineIntersection(prev, cur, a, b));
      }
    }
  }

  // Collapse coincident consecutive vertices produced by touching edges.
  Polygon cleaned;
  for (const Point2& p : output) {
    if (cleaned.empty() || std::hypot(p.x - cleaned.back().x,
                                      p.y - cleaned.back().y) > 1e-15) {
      cleaned.push_back(p);
    }
  }
  while (cleaned.size() > 1 &&
         std::hypot(cleaned.front().x - cleaned.back().x,
                    cleaned.front().y - cleaned.back().y) <= 1e-15) {
    cleaned.pop_back();
  }
  if (cleaned.size() < 3 || std::fabs(SignedArea(cleaned)) < kEmptyArea) {
    return {};
  }
  return cleaned;
}

double RotatedIou(const RotatedBox& a, const RotatedBox& b) {
  const QuadPolygon pa = RboxToPolygon(a);
  const QuadPolygon pb = RboxToPolygon(b);
  const Polygon inter = ConvexIntersection(pa, pb);
  const double inter_area = std::fabs(SignedArea(inter));
  const double uni = a.area() + b.area() - inter_area;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter_area / uni, 0.0, 1.0);
}

HorizontalBox RboxToHbb(const RotatedBox& box) {
  const QuadPolygon p = RboxToPolygon(box);
  HorizontalBox out{p[0].x, p[0].y, p[0].x, p[0].y};
  for (const Point2& v : p) {
    out.xmin = std::min(out.xmin, v.x);
    out.ymin = std::min(out.ymin, v.y);
    out.xmax = std::max(out.xmax, v.x);
    out.ymax = std::max(out.ymax, v.y);
  }
  return out;
}

double AspectRatio(const RotatedBox& box) {
  return std::max(box.w, box.h) / std::min(box.w, box.h);
}

}  // namespace ucr
