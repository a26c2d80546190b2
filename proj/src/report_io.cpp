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

#include "ucr/report_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "ucr/error.hpp"

namespace ucr::io {
namespace {

using nlohmann::json;

json ProvenanceObject(std::string_view provenance) {
  if (provenance.empty()) return json::object();
  try {
    return json::parse(provenance);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("provenance is not valid JSON: ") + e.what());
  }
}

std::string CsvPreamble(std::string_view provenance) {
  return "# " + ProvenanceObject(provenance).dump() + "\n";
}

json QuantilesJson(const Quantiles& q) {
  return {{"p10", q.p10}, {"p50", q.p50}, {"p90", q.p90}};
}

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view field = line.substr(start, comma - start);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.remove_prefix(1);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.remove_suffix(1);
    out.push_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double ParseNumber(std::string_view token, std::size_t line) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError("not a number: '" + std::string(token) + "'", line);
  }
  return v;
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    fn(line.substr(first), line_no);
  }
}

void CheckFields(const std::vector<std::string_view>& f, std::size_t want,
                 std::size_t line) {
  if (f.size() != want) {
    throw ParseError("expected " + std::to_string(want) + " fields, got " +
                         std::to_string(f.size()),
                     line);
  }
}

}  // namespace

std::string FormatDouble(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string FitReportCsv(const FitReport& report, std::string_view provenance) {
  std::string out = CsvPreamble(provenance);
  out += "index,ae2,angle_error\n";
  for (std::size_t i = 0; i < report.size(); ++i) {
    out += std::to_string(i) + "," + FormatDouble(report.ae2[i]) + "," +
           FormatDouble(report.angle_error[i]) + "\n";
  }
  return out;
}

std::string BiasStudySamplesCsv(const BiasStudy& study,
                                std::string_view provenance) {
  std::string out = CsvPreamble(provenance);
  out += "repetition,arm,lambda_uc,index,ae2,angle_error\n";
  for (std::size_t r = 0; r < study.pairs.size(); ++r) {
    const PairOutcome& p = study.pairs[r];
    for (const auto& [arm, lambda, report] :
         {std::tuple{"baseline", study.baseline_lambda_uc, &p.baseline},
          std::tuple{"constrained", study.lambda_uc, &p.constrained}}) {
      const std::string prefix =
          std::to_string(r) + "," + arm + "," + FormatDouble(lambda) + ",";
      for (std::size_t i = 0; i < report->size(); ++i) {
        out += prefix + std::to_string(i) + "," + FormatDouble(report->ae2[i]) +
               "," + FormatDouble(report->angle_error[i]) + "\n";
      }
    }
  }
  return out;
}

std::string BiasStudyHistogramCsv(const BiasStudy& study, int bins,
                                  std::string_view provenance) {
  FitReport baseline, constrained;
  for (const PairOutcome& p : study.pairs) {
    baseline.target_ae2 = constrained.target_ae2 = p.baseline.target_ae2;
    baseline.ae2.insert(baseline.ae2.end(), p.baseline.ae2.begin(),
                        p.baseline.ae2.end());
    constrained.ae2.insert(constrained.ae2.end(), p.constrained.ae2.begin(),
                           p.constrained.ae2.end());
  }
  const Histogram range_probe = Ae2Histogram(baseline, 1);
  const Histogram range_probe2 = Ae2Histogram(constrained, 1);
  const double hi = std::max(range_probe.hi, range_probe2.hi);

  std::string out = CsvPreamble(provenance);
  out += "arm,bin_lo,bin_hi,count\n";
  for (const auto& [arm, report] :
       {std::pair{"baseline", &baseline}, std::pair{"constrained", &constrained}}) {
    const Histogram h = Ae2Histogram(*report, bins, hi);
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      out += std::string(arm) + "," + FormatDouble(h.lo + b * h.BinWidth()) +
             "," + FormatDouble(h.lo + (b + 1) * h.BinWidth()) + "," +
             std::to_string(h.counts[b]) + "\n";
    }
  }
  return out;
}

std::string BiasStudySummaryJson(const BiasStudy& study,
                                 std::string_view provenance) {
  json pairs = json::array();
  for (const PairOutcome& p : study.pairs) {
    pairs.push_back({
        {"seed", p.seed},
        {"baseline_median_ae2_deviation", p.baseline_median_ae2_dev},
        {"constrained_median_ae2_deviation", p.constrained_median_ae2_dev},
        {"baseline_median_angle_error", p.baseline.angle_error_quantiles.p50},
        {"constrained_median_angle_error",
         p.constrained.angle_error_quantiles.p50},
        {"baseline_ae2", QuantilesJson(p.baseline.ae2_quantiles)},
        {"constrained_ae2", QuantilesJson(p.constrained.ae2_quantiles)},
        {"ae2_win", p.ae2_win},
        {"angle_win", p.angle_win},
    });
  }
  const int reps = static_cast<int>(study.pairs.size());
  auto verdict = [](double p) {
    return p < 0.05 ? "constrained better" : "no significant difference";
  };
  json out = {
      {"provenance", ProvenanceObject(provenance)},
      {"baseline_lambda_uc", study.baseline_lambda_uc},
      {"lambda_uc", study.lambda_uc},
      {"repetitions", reps},
      {"sign_test",
       {{"ae2_wins", study.ae2_wins},
        {"ae2_p_value", study.ae2_p_value},
        {"ae2_verdict", verdict(study.ae2_p_value)},
        {"angle_wins", study.angle_wins},
        {"angle_p_value", study.angle_p_value},
        {"angle_verdict", verdict(study.angle_p_value)}}},
      {"pairs", pairs},
  };
  return out.dump(2) + "\n";
}

std::string BoundaryCsv(const std::vector<double>& epsilons,
                        std::string_view provenance) {
  ResolverConfig two;
  two.dimension = 2;
  ResolverConfig three;
  three.dimension = 3;
  const auto rows2 = BoundaryDemo(epsilons, two);
  const auto rows3 = BoundaryDemo(epsilons, three);
  std::string out = CsvPreamble(provenance);
  out += "epsilon,loss_1d,gap_n2,gap_n3\n";
  for (std::size_t i = 0; i < rows2.size(); ++i) {
    out += FormatDouble(rows2[i].epsilon) + "," + FormatDouble(rows2[i].loss_1d) +
           "," + FormatDouble(rows2[i].gap) + "," + FormatDouble(rows3[i].gap) +
           "\n";
  }
  return out;
}

std::string StatsCsv(const DatasetStats& stats, std::string_view provenance) {
  std::string out = CsvPreamble(provenance);
  out += "category,metric,bin_lo,bin_hi,value\n";
  const double angle_width = kPi / stats.options.angle_bins;
  const double ar_width = stats.options.aspect_bin_width;
  for (const auto& [cat, c] : stats.categories) {
    out += cat + ",count,,," + std::to_string(c.count) + "\n";
    out += cat + ",mean_area,,," + FormatDouble(c.MeanArea()) + "\n";
    for (std::size_t b = 0; b < c.angle_histogram.size(); ++b) {
      out += cat + ",angle," + FormatDouble(-kHalfPi + b * angle_width) + "," +
             FormatDouble(-kHalfPi + (b + 1) * angle_width) + "," +
             std::to_string(c.angle_histogram[b]) + "\n";
    }
    for (std::size_t b = 0; b < c.aspect_histogram.size(); ++b) {
      const bool last = b + 1 == c.aspect_histogram.size();
      out += cat + ",aspect_ratio," + FormatDouble(1.0 + b * ar_width) + "," +
             (last ? std::string("inf") : FormatDouble(1.0 + (b + 1) * ar_width)) +
             "," + std::to_string(c.aspect_histogram[b]) + "\n";
    }
  }
  return out;
}

std::string StatsJson(const DatasetStats& stats, std::string_view provenance) {
  json cats = json::object();
  std::size_t total = 0;
  for (const auto& [cat, c] : stats.categories) total += c.count;
  for (const auto& [cat, c] : stats.categories) {
    cats[cat] = {
        {"count", c.count},
        {"fraction", total ? static_cast<double>(c.count) / total : 0.0},
        {"mean_area", c.MeanArea()},
        {"angle_histogram", c.angle_histogram},
        {"aspect_histogram", c.aspect_histogram},
    };
  }
  json out = {
      {"provenance", ProvenanceObject(provenance)},
      {"angle_bins", stats.options.angle_bins},
      {"aspect_bins", stats.options.aspect_bins},
      {"aspect_bin_width", stats.options.aspect_bin_width},
      {"total_instances", stats.total_instances},
      {"conversion_failures", stats.conversion_failures},
      {"categories", cats},
  };
  return out.dump(2) + "\n";
}

std::string CleanReportJsonl(const std::vector<CleanAction>& report) {
  std::string out;
  for (const CleanAction& a : report) {
    json line = {{"image_id", a.image_id}, {"action", a.action},
                 {"reason", a.reason}};
    if (!a.kept.empty()) line["kept"] = a.kept;
    out += line.dump() + "\n";
  }
  return out;
}

std::string EvalJson(const EvalResult& result, std::string_view provenance) {
  json cats = json::object();
  for (const auto& [cat, aps] : result.per_category) {
    json row = json::array();
    for (const auto& ap : aps) row.push_back(ap ? json(*ap) : json(nullptr));
    cats[cat] = row;
  }
  json out = {
      {"provenance", ProvenanceObject(provenance)},
      {"thresholds", result.thresholds},
      {"AP50", result.ap50},
      {"AP75", result.ap75},
      {"mAP", result.map},
      {"threshold_means", result.threshold_means},
      {"per_category", cats},
      {"warnings", result.warnings},
  };
  return out.dump(2) + "\n";
}

std::string EvalTable(const EvalResult& result) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  auto column = [&](const std::vector<std::optional<double>>& aps, double t) {
    for (std::size_t i = 0; i < result.thresholds.size(); ++i) {
      if (std::fabs(result.thresholds[i] - t) < 1e-9 && aps[i]) return *aps[i];
    }
    return std::nan("");
  };
  os << "category            AP50     AP75     mAP\n";
  for (const auto& [cat, aps] : result.per_category) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& ap : aps) {
      if (ap) {
        sum += *ap;
        ++n;
      }
    }
    std::string name = cat.substr(0, 18);
    name.resize(18, ' ');
    os << name << "  ";
    if (n == 0) {
      os << "   -        -        -\n";
      continue;
    }
    os << column(aps, 0.5) << "   " << column(aps, 0.75) << "   " << sum / n
       << "\n";
  }
  os << "all                 " << result.ap50 << "   " << result.ap75 << "   "
     << result.map << "\n";
  return os.str();
}

std::vector<DetectionRecord> ParseDetections(std::string_view text) {
  std::vector<DetectionRecord> out;
  ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
    DetectionRecord d;
    double cx, cy, w, h, theta;
    if (line.front() == '{') {
      try {
        const json j = json::parse(line);
        d.image_id = j.at("image_id").get<std::string>();
        d.category = j.at("category").get<std::string>();
        d.score = j.at("score").get<double>();
        cx = j.at("cx").get<double>();
        cy = j.at("cy").get<double>();
        w = j.at("w").get<double>();
        h = j.at("h").get<double>();
        theta = j.at("theta").get<double>();
      } catch (const json::exception& e) {
        throw ParseError(std::string("bad detection object: ") + e.what(),
                         line_no);
      }
    } else {
      const auto f = SplitCsv(line);
      if (!f.empty() && f[0] == "image_id") return;  // header
      CheckFields(f, 8, line_no);
      d.image_id = std::string(f[0]);
      d.category = std::string(f[1]);
      d.score = ParseNumber(f[2], line_no);
      cx = ParseNumber(f[3], line_no);
      cy = ParseNumber(f[4], line_no);
      w = ParseNumber(f[5], line_no);
      h = ParseNumber(f[6], line_no);
      theta = ParseNumber(f[7], line_no);
    }
    try {
      d.box = RotatedBox::Make(cx, cy, w, h, theta);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
    if (!(d.score >= 0.0 && d.score <= 1.0)) {
      throw ParseError("score must lie in [0, 1]", line_no);
    }
    out.push_back(std::move(d));
  });
  return out;
}

std::string RboxCsv(const std::vector<ImageAnnotations>& images,
                    std::string_view provenance) {
  std::string out = CsvPreamble(provenance);
  out += "image_id,category,difficulty,cx,cy,w,h,theta\n";
  for (const ImageAnnotations& img : images) {
    for (const AnnotationRecord& rec : img.records) {
      const RotatedBox b = PolyToRbox(rec.polygon);
      out += img.image_id + "," + rec.category + "," +
             std::to_string(rec.difficulty) + "," + FormatDouble(b.cx) + "," +
             FormatDouble(b.cy) + "," + FormatDouble(b.w) + "," +
             FormatDouble(b.h) + "," + FormatDouble(b.theta.radians()) + "\n";
    }
  }
  return out;
}

std::vector<ImageAnnotations> ParseRboxCsv(std::string_view text) {
  std::vector<ImageAnnotations> images;
  std::map<std::string, std::size_t> index;
  ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
    const auto f = SplitCsv(line);
    if (!f.empty() && f[0] == "image_id") return;
    CheckFields(f, 8, line_no);
    AnnotationRecord rec;
    rec.category = std::string(f[1]);
    if (f[2] != "0" && f[2] != "1") {
      throw ParseError("difficulty must be 0 or 1", line_no);
    }
    rec.difficulty = f[2] == "1" ? 1 : 0;
    try {
      rec.polygon = RboxToPolygon(RotatedBox::Make(
          ParseNumber(f[3], line_no), ParseNumber(f[4], line_no),
          ParseNumber(f[5], line_no), ParseNumber(f[6], line_no),
          ParseNumber(f[7], line_no)));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
    const std::string id(f[0]);
    auto [it, inserted] = index.try_emplace(id, images.size());
    if (inserted) images.push_back(ImageAnnotations{id, {}, std::nullopt});
    images[it->second].records.push_back(std::move(rec));
  });
  return images;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::vector<ImageAnnotations> LoadDotaDirectory(
    const std::filesystem::path& annotation_dir,
    const std::filesystem::path& image_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(annotation_dir, ec)) {
    throw Error(ErrorCode::kIo,
                "annotation directory not found: " + annotation_dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(annotation_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::map<std::string, fs::path> image_files;
  if (!image_dir.empty()) {
    if (!fs::is_directory(image_dir, ec)) {
      throw Error(ErrorCode::kIo,
                  "image directory not found: " + image_dir.string());
    }
    for (const auto& entry : fs::directory_iterator(image_dir)) {
      if (entry.is_regular_file()) {
        image_files.emplace(entry.path().stem().string(), entry.path());
      }
    }
  }

  std::vector<ImageAnnotations> images;
  for (const fs::path& file : files) {
    const std::string id = file.stem().string();
    ImageAnnotations img;
    try {
      img = ParseDotaFile(ReadFile(file), id);
    } catch (const ParseError& e) {
      throw ParseError(file.filename().string() + ": " + e.what());
    }
    if (const auto it = image_files.find(id); it != image_files.end()) {
      img.content_hash = ContentHash(ReadFile(it->second));
    }
    images.push_back(std::move(img));
  }
  return images;
}

void WriteDotaDirectory(const std::vector<ImageAnnotations>& images,
                        const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  for (const ImageAnnotations& img : images) {
    WriteFile(dir / (img.image_id + ".txt"), WriteDotaFile(img));
  }
}

}  // namespace ucr::io
