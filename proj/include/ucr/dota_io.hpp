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

#ifndef UCR_DOTA_IO_HPP_
#define UCR_DOTA_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ucr/geometry.hpp"

namespace ucr {

struct AnnotationRecord {
  QuadPolygon polygon;  // counter-clockwise
  std::string category;
  int difficulty = 0;

  friend bool operator==(const AnnotationRecord&,
                         const AnnotationRecord&) = default;
};

struct ImageAnnotations {
  std::string image_id;
  std::vector<AnnotationRecord> records;
  std::optional<std::uint64_t> content_hash;
};

// 64-bit FNV-1a over raw bytes.
std::uint64_t ContentHash(std::span<const std::byte> bytes);
std::uint64_t ContentHash(std::string_view bytes);

// One record per "x1 y1 x2 y2 x3 y3 x4 y4 category difficulty" line. Blank
// lines and "imagesource:" / "gsd:" metadata lines are skipped. Clockwise
// polygons are reversed so every record is counter-clockwise. Throws
// ParseError with the 1-based line number.
ImageAnnotations ParseDotaFile(std::string_view text,
                               std::string image_id = {});

// Coordinates use the shortest decimal form that reads back bit-exactly.
std::string WriteDotaFile(const ImageAnnotations& annotations);

// Near-parallelograms (opposite sides within 10%) take the edge-midpoint
// path: the w-side runs along the first edge (v0 -> v1). Anything else falls
// back to the minimum-area enclosing rectangle. Throws ucr::Error (kDomain)
// for a zero-area polygon.
RotatedBox PolyToRbox(const QuadPolygon& polygon);

struct CleanAction {
  std::string image_id;
  std::string action;  // always "drop" for now
  std::string reason;  // "duplicate" or "unannotated"
  std::string kept;    // image retained in place of a duplicate
};

struct CleanResult {
  std::vector<ImageAnnotations> images;
  std::vector<CleanAction> report;
};

// Among images sharing a content hash keep the one with the most records
// (ties: smallest image_id); then drop images without records. Images with
// no hash never count as duplicates. Output keeps input order.
CleanResult CleanDataset(std::span<const ImageAnnotations> images);

struct StatsOptions {
  int angle_bins = 36;
  // Aspect-ratio bins of width `aspect_bin_width` starting at 1; the last
  // bin absorbs everything above.
  int aspect_bins = 10;
  double aspect_bin_width = 1.0;
};

struct CategoryStats {
  std::size_t count = 0;
  std::vector<std::size_t> angle_histogram;
  std::vector<std::size_t> aspect_histogram;
  double area_sum = 0.0;

  double MeanArea() const { return count ? area_sum / count : 0.0; }
};

struct DatasetStats {
  StatsOptions options;
  std::map<std::string, CategoryStats> categories;
  std::size_t conversion_failures = 0;
  std::size_t total_instances = 0;
};

// Bin index of an le90 angle among `bins` equal bins over [-pi/2, pi/2).
std::size_t AngleBin(AngleLe90 theta, int bins);
std::size_t AspectBin(double ratio, const StatsOptions& options);

DatasetStats ComputeStats(std::span<const ImageAnnotations> images,
                          const StatsOptions& options = {});

// The six RSAR categories, for presets and fixtures.
std::span<const std::string_view> RsarCategories();

}  // namespace ucr

#endif  // UCR_DOTA_IO_HPP_
