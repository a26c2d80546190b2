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

#include "ucr/dota_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

#include "ucr/error.hpp"

namespace ucr {
namespace {

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

double ParseCoordinate(std::string_view token, std::size_t line) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError("non-numeric coordinate '" + std::string(token) + "'",
                     line);
  }
  return v;
}

void AppendNumber(std::string& out, double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

double Length(const Point2& p) { return std::hypot(p.x, p.y); }

bool SimilarLength(double a, double b) {
  return std::fabs(a - b) <= 0.1 * std::max(a, b);
}

RotatedBox MinAreaRect(const QuadPolygon& polygon) {
  std::vector<Point2> pts(polygon.begin(), polygon.end());
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  auto cross = [](const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  // Andrew's monotone chain.
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);

  // Caliper sweep: one candidate rectangle per hull edge direction.
  double best_area = std::numeric_limits<double>::infinity();
  RotatedBox best;
  for (std::size_t e = 0; e < hull.size(); ++e) {
    const Point2& a = hull[e];
    const Point2& b = hull[(e + 1) % hull.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (len <= 0.0) continue;
    const Point2 u{(b.x - a.x) / len, (b.y - a.y) / len};
    const Point2 v{-u.y, u.x};
    double umin = std::numeric_limits<double>::infinity(), umax = -umin;
    double vmin = umin, vmax = -umin;
    for (const Point2& p : hull) {
      const double pu = p.x * u.x + p.y * u.y;
      const double pv = p.x * v.x + p.y * v.y;
      umin = std::min(umin, pu);
      umax = std::max(umax, pu);
      vmin = std::min(vmin, pv);
      vmax = std::max(vmax, pv);
    }
    const double area = (umax - umin) * (vmax - vmin);
    if (area < best_area) {
      best_area = area;
      const double cu = 0.5 * (umin + umax);
      const double cv = 0.5 * (vmin + vmax);
      best = RotatedBox::Make(cu * u.x + cv * v.x, cu * u.y + cv * v.y,
                              umax - umin, vmax - vmin, std::atan2(u.y, u.x));
    }
  }
  return best;
}

}  // namespace

std::uint64_t ContentHash(std::span<const std::byte> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::byte b : bytes) {
    h ^= static_cast<std::uint64_t>(b);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t ContentHash(std::string_view bytes) {
  return ContentHash(std::as_bytes(std::span(bytes.data(), bytes.size())));
}

ImageAnnotations ParseDotaFile(std::string_view text, std::string image_id) {
  ImageAnnotations out;
  out.image_id = std::move(image_id);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto tokens = SplitWhitespace(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (StartsWith(tokens[0], "imagesource:") || StartsWith(tokens[0], "gsd:")) {
      continue;
    }
    if (tokens.size() != 10) {
      throw ParseError("expected 8 coordinates, a category and a difficulty, "
                       "got " + std::to_string(tokens.size()) + " fields",
                       line_no);
    }
    AnnotationRecord rec;
    for (std::size_t i = 0; i < 4; ++i) {
      rec.polygon[i] = {ParseCoordinate(tokens[2 * i], line_no),
                        ParseCoordinate(tokens[2 * i + 1], line_no)};
    }
    rec.category = std::string(tokens[8]);
    if (tokens[9] == "0") {
      rec.difficulty = 0;
    } else if (tokens[9] == "1") {
      rec.difficulty = 1;
    } else {
      throw ParseError("difficulty must be 0 or 1, got '" +
                           std::string(tokens[9]) + "'",
                       line_no);
    }
    if (SignedArea(rec.polygon) < 0.0) {
      std::swap(rec.polygon[1], rec.polygon[3]);
    }
    out.records.push_back(std::move(rec));
    if (end == text.size()) break;
  }
  return out;
}

std::string WriteDotaFile(const ImageAnnotations& annotations) {
  std::string out;
  for (const AnnotationRecord& rec : annotations.records) {
    for (const Point2& p : rec.polygon) {
      AppendNumber(out, p.x);
      out += ' ';
      AppendNumber(out, p.y);
      out += ' ';
    }
    out += rec.category;
    out += ' ';
    out += std::to_string(rec.difficulty);
    out += '\n';
  }
  return out;
}

RotatedBox PolyToRbox(const QuadPolygon& p) {
  if (std::fabs(SignedArea(p)) < 1e-12) {
    throw Error(ErrorCode::kDomain, "degenerate polygon has zero area");
  }
  std::array<double, 4> len{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2& a = p[i];
    const Point2& b = p[(i + 1) % 4];
    len[i] = std::hypot(b.x - a.x, b.y - a.y);
  }
  // A parallelogram has matching opposite sides and diagonals that bisect
  // each other; crossed quads can pass the first test but not the second.
  const double mean_side = 0.25 * (len[0] + len[1] + len[2] + len[3]);
  const Point2 diag_gap{p[0].x + p[2].x - p[1].x - p[3].x,
                        p[0].y + p[2].y - p[1].y - p[3].y};
  if (!SimilarLength(len[0], len[2]) || !SimilarLength(len[1], len[3]) ||
      0.5 * Length(diag_gap) > 0.1 * mean_side) {
    return MinAreaRect(p);
  }
  const Point2 center{0.25 * (p[0].x + p[1].x + p[2].x + p[3].x),
                      0.25 * (p[0].y + p[1].y + p[2].y + p[3].y)};
  const Point2 wvec{0.5 * (p[1].x + p[2].x - p[0].x - p[3].x),
                    0.5 * (p[1].y + p[2].y - p[0].y - p[3].y)};
  const Point2 hvec{0.5 * (p[2].x + p[3].x - p[0].x - p[1].x),
                    0.5 * (p[2].y + p[3].y - p[0].y - p[1].y)};
  const double w = Length(wvec);
  const double h = std::fabs(wvec.x * hvec.y - wvec.y * hvec.x) / w;
  return RotatedBox::Make(center.x, center.y, w, h, std::atan2(wvec.y, wvec.x));
}

CleanResult CleanDataset(std::span<const ImageAnnotations> images) {
  std::map<std::uint64_t, std::size_t> keeper;  // hash -> index
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i].content_hash) continue;
    const auto [it, inserted] = keeper.emplace(*images[i].content_hash, i);
    if (inserted) continue;
    const ImageAnnotations& cur = images[it->second];
    const ImageAnnotations& cand = images[i];
    if (cand.records.size() > cur.records.size() ||
        (cand.records.size() == cur.records.size() &&
         cand.image_id < cur.image_id)) {
      it->second = i;
    }
  }

  CleanResult result;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const ImageAnnotations& img = images[i];
    if (img.content_hash) {
      const std::size_t kept = keeper.at(*img.content_hash);
      if (kept != i) {
        result.report.push_back(
            {img.image_id, "drop", "duplicate", images[kept].image_id});
        continue;
      }
    }
    if (img.records.empty()) {
      result.report.push_back({img.image_id, "drop", "unannotated", ""});
      continue;
    }
    result.images.push_back(img);
  }
  return result;
}

std::size_t AngleBin(AngleLe90 theta, int bins) {
  const double pos = (theta.radians() + kHalfPi) / kPi * bins;
  const auto idx = static_cast<long>(std::floor(pos));
  return static_cast<std::size_t>(std::clamp(idx, 0L, static_cast<long>(bins) - 1));
}

std::size_t AspectBin(double ratio, const StatsOptions& options) {
  const auto idx =
      static_cast<long>(std::floor((ratio - 1.0) / options.aspect_bin_width));
  return static_cast<std::size_t>(
      std::clamp(idx, 0L, static_cast<long>(options.aspect_bins) - 1));
}

DatasetStats ComputeStats(std::span<const ImageAnnotations> images,
                          const StatsOptions& options) {
  if (options.angle_bins < 1 || options.aspect_bins < 1 ||
      !(options.aspect_bin_width > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid histogram layout");
  }
  DatasetStats stats;
  stats.options = options;
  for (const ImageAnnotations& img : images) {
    for (const AnnotationRecord& rec : img.records) {
      RotatedBox box;
      try {
        box = PolyToRbox(rec.polygon);
      } catch (const Error&) {
        ++stats.conversion_failures;
        continue;
      }
      auto [it, inserted] = stats.categories.try_emplace(rec.category);
      CategoryStats& cat = it->second;
      if (inserted) {
        cat.angle_histogram.assign(options.angle_bins, 0);
        cat.aspect_histogram.assign(options.aspect_bins, 0);
      }
      ++cat.count;
      ++cat.angle_histogram[AngleBin(box.theta, options.angle_bins)];
      ++cat.aspect_histogram[AspectBin(AspectRatio(box), options)];
      cat.area_sum += box.area();
      ++stats.total_instances;
    }
  }
  return stats;
}

std::span<const std::string_view> RsarCategories() {
  static constexpr std::array<std::string_view, 6> kNames = {
      "ship", "aircraft", "car", "tank", "bridge", "harbor"};
  return kNames;
}

}  // namespace ucr
