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

#ifndef UCR_REPORT_IO_HPP_
#define UCR_REPORT_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ucr/dota_io.hpp"
#include "ucr/eval.hpp"
#include "ucr/optim.hpp"

// Text serialization of every artifact the library produces. `provenance`
// is a JSON object (as text, may be empty) that is embedded verbatim: as a
// leading "# {...}" comment line in CSV output and as a "provenance" member
// in JSON output.
namespace ucr::io {

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double v);

std::string FitReportCsv(const FitReport& report, std::string_view provenance);

// Rows: repetition, arm, lambda_uc, index, ae2, angle_error.
std::string BiasStudySamplesCsv(const BiasStudy& study,
                                std::string_view provenance);

// Both arms binned over one common range; rows: arm, bin_lo, bin_hi, count.
std::string BiasStudyHistogramCsv(const BiasStudy& study, int bins,
                                  std::string_view provenance);

std::string BiasStudySummaryJson(const BiasStudy& study,
                                 std::string_view provenance);

// Columns: epsilon, loss_1d, gap_n2, gap_n3 (omega = 2, unit amplitude).
std::string BoundaryCsv(const std::vector<double>& epsilons,
                        std::string_view provenance);

// Long format: category, metric, bin_lo, bin_hi, value.
std::string StatsCsv(const DatasetStats& stats, std::string_view provenance);
std::string StatsJson(const DatasetStats& stats, std::string_view provenance);

// One JSON object per line: image_id, action, reason (and kept, for
// duplicates).
std::string CleanReportJsonl(const std::vector<CleanAction>& report);

std::string EvalJson(const EvalResult& result, std::string_view provenance);
std::string EvalTable(const EvalResult& result);

// Detections as CSV (image_id,category,score,cx,cy,w,h,theta; optional header
// row and '#' comments) or JSON lines with the same keys. The format is
// detected per line.
std::vector<DetectionRecord> ParseDetections(std::string_view text);

// Rotated-box CSV used by `convert`:
// image_id,category,difficulty,cx,cy,w,h,theta.
std::string RboxCsv(const std::vector<ImageAnnotations>& images,
                    std::string_view provenance);
std::vector<ImageAnnotations> ParseRboxCsv(std::string_view text);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

// Every *.txt under `annotation_dir` becomes one image (id = file stem).
// When `image_dir` is non-empty, the image file sharing the stem is hashed
// into content_hash.
std::vector<ImageAnnotations> LoadDotaDirectory(
    const std::filesystem::path& annotation_dir,
    const std::filesystem::path& image_dir = {});

void WriteDotaDirectory(const std::vector<ImageAnnotations>& images,
                        const std::filesystem::path& dir);

}  // namespace ucr::io

#endif  // UCR_REPORT_IO_HPP_
