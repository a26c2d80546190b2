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

#ifndef UCR_GEOMETRY_HPP_
#define UCR_GEOMETRY_HPP_

#include <array>
#include <numbers>
#include <span>
#include <vector>

namespace ucr {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

// Angle in le90 notation, always in [-pi/2, pi/2).
class AngleLe90 {
 public:
  constexpr AngleLe90() = default;

  // Wraps any finite value by multiples of pi. Throws ucr::Error (kDomain)
  // on NaN or infinity.
  static AngleLe90 FromRadians(double raw);

  constexpr double radians() const { return radians_; }

  friend constexpr bool operator==(AngleLe90, AngleLe90) = default;

 private:
  constexpr explicit AngleLe90(double r) : radians_(r) {}
  double radians_ = 0.0;
};

AngleLe90 NormalizeAngle(double raw);

// Smallest distance between two orientations of period pi; in [0, pi/2].
double AngularDistance(AngleLe90 a, AngleLe90 b);

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

// Oriented rectangle. theta rotates the w-side away from the +x axis, so the
// w-side direction is (cos theta, sin theta).
struct RotatedBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 1.0;
  double h = 1.0;
  AngleLe90 theta;

  // Validating constructor: w and h must be finite and positive, theta is
  // normalized into le90.
  static RotatedBox Make(double cx, double cy, double w, double h,
                         double theta);

  double area() const { return w * h; }

  friend bool operator==(const RotatedBox&, const RotatedBox&) = default;
};

struct HorizontalBox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;
};

// Four vertices, counter-clockwise (positive signed area).
using QuadPolygon = std::array<Point2, 4>;

using Polygon = std::vector<Point2>;

double SignedArea(std::span<const Point2> polygon);

QuadPolygon RboxToPolygon(const RotatedBox& box);

// Clips convex polygon `subject` successively by each edge of convex polygon
// `clip` (Sutherland-Hodgman). Either input may be given in any winding
// order. Intersections with area below 1e-12 come back empty.
Polygon ConvexIntersection(std::span<const Point2> subject,
                           std::span<const Point2> clip);

double RotatedIou(const RotatedBox& a, const RotatedBox& b);

HorizontalBox RboxToHbb(const RotatedBox& box);

double AspectRatio(const RotatedBox& box);

}  // namespace ucr

#endif  // UCR_GEOMETRY_HPP_
