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

// ucr: command-line front end over the C API in ucr/ucr.h.
//
// Exit codes: 0 success, 1 I/O, 2 usage or parse error, 3 domain error,
// 4 numeric failure.

#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "run_config.hpp"
#include "ucr/ucr.h"

namespace {

namespace fs = std::filesystem;
using ucr::cli::RunConfig;
using ucr::cli::UsageError;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumeric = 4;

struct Failure {
  int exit_code;
  std::string message;
};

int ExitCodeFor(ucr_status st) {
  switch (st) {
    case UCR_OK:
      return kExitOk;
    case UCR_ERROR_INVALID_ARGUMENT:
    case UCR_ERROR_PARSE:
    case UCR_ERROR_BUFFER_TOO_SMALL:
      return kExitUsage;
    case UCR_ERROR_DOMAIN:
      return kExitDomain;
    case UCR_ERROR_NUMERIC:
      return kExitNumeric;
    case UCR_ERROR_IO:
    case UCR_ERROR_INTERNAL:
      return kExitIo;
  }
  return kExitIo;
}

void Check(ucr_status st) {
  if (st != UCR_OK) throw Failure{ExitCodeFor(st), ucr_last_error()};
}

struct StringDeleter {
  void operator()(char* s) const { ucr_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

template <typename T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using FitStudy = std::unique_ptr<ucr_bias_study,
                                 HandleDeleter<ucr_bias_study, ucr_bias_study_free>>;
using Dataset =
    std::unique_ptr<ucr_dataset, HandleDeleter<ucr_dataset, ucr_dataset_free>>;
using Detections = std::unique_ptr<
    ucr_detections, HandleDeleter<ucr_detections, ucr_detections_free>>;
using EvalResult = std::unique_ptr<
    ucr_eval_result, HandleDeleter<ucr_eval_result, ucr_eval_result_free>>;

std::string Take(char* s) {
  const OwnedString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitIo, "cannot open " + path.string()};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{kExitIo, "cannot write " + path.string()};
  out << text;
  if (!out) throw Failure{kExitIo, "write failed for " + path.string()};
}

std::vector<std::string> StdinLines() {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

std::vector<double> ParseNumberList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(field, &used));
      if (field.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument(field);
      }
    } catch (const std::exception&) {
      throw Failure{kExitUsage, "not a number: '" + field + "'"};
    }
  }
  return out;
}

// Flags that override RunConfig values. Each is only applied when given.
class Overrides {
 public:
  void AddResolver(CLI::App* app) {
    Add(app, "--dim", "dimension", "Encoding dimension n (1..5)");
    Add(app, "--omega", "angular_frequency", "Angular frequency");
    Add(app, "--amplitude", "amplitude", "Per-component amplitude s");
  }
  void AddLoss(CLI::App* app) {
    Add(app, "--lambda-reg", "lambda_reg", "Regression loss weight");
    Add(app, "--lambda-uc", "lambda_uc", "Unit-cycle loss weight");
    Add(app, "--m-invalid", "m_invalid", "Invalid-region threshold on sum m^2");
    Add(app, "--uc-loss", "uc_loss_kind", "Unit-cycle penalty: l1 or l2");
    Add(app, "--reg-loss", "reg_loss_kind", "Regression penalty: l1 or l2");
  }
  void AddFit(CLI::App* app) {
    Add(app, "--noise-sigma", "noise_sigma", "Target angle noise (radians)");
    Add(app, "--init-scale", "init_scale", "Initial encoding radius");
    Add(app, "--steps", "steps", "Gradient-descent steps");
    Add(app, "--lr", "learning_rate", "Learning rate");
    Add(app, "--seed", "seed", "Base random seed");
    Add(app, "--noise-draws", "noise_draws", "Noisy copies per target");
    Add(app, "--samples", "samples", "Samples per repetition");
    Add(app, "--repetitions", "repetitions", "Paired repetitions");
    Add(app, "--baseline-lambda-uc", "baseline_lambda_uc",
        "Unit-cycle weight of the baseline arm");
    Add(app, "--bins", "histogram_bins", "AE^2 histogram bins");
  }

  void ApplyTo(RunConfig& cfg) const {
    for (const auto& [key, value] : values_) {
      if (!value.empty()) cfg.Set(key, value);
    }
  }

 private:
  void Add(CLI::App* app, const std::string& flag, const std::string& key,
           const std::string& help) {
    values_.emplace_back(key, std::string());
    app->add_option(flag, values_.back().second, help);
  }

  // std::list-like stability is needed because CLI11 keeps references.
  std::deque<std::pair<std::string, std::string>> values_;
};

struct Common {
  std::string config_path;
  Overrides overrides;

  RunConfig Resolve() const {
    RunConfig cfg;
    if (!config_path.empty()) cfg.ApplyToml(ReadText(config_path));
    cfg.ApplyEnvironment();
    overrides.ApplyTo(cfg);
    return cfg;
  }
};

void ValidateConfig(const RunConfig& cfg) {
  char* warnings = nullptr;
  Check(ucr_config_validate(&cfg.resolver, &cfg.loss, &warnings));
  for (const auto& w : nlohmann::json::parse(Take(warnings))) {
    std::cerr << "warning: " << w.get<std::string>() << "\n";
  }
}

int CmdEncode(const Common& common, const std::vector<double>& thetas) {
  const RunConfig cfg = common.Resolve();
  Check(ucr_config_validate(&cfg.resolver, nullptr, nullptr));
  std::vector<double> inputs = thetas;
  if (inputs.empty()) {
    for (const std::string& line : StdinLines()) {
      const auto fields = ParseNumberList(line);
      if (fields.empty()) throw Failure{kExitUsage, "empty input line"};
      inputs.push_back(fields.front());
    }
  }
  std::vector<double> m(static_cast<std::size_t>(cfg.resolver.dimension));
  for (double theta : inputs) {
    Check(ucr_encode(&cfg.resolver, theta, m.data(), m.size()));
    std::string line;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) line += ',';
      line += Fmt(m[i]);
    }
    std::cout << line << "\n";
  }
  return kExitOk;
}

int CmdDecode(const Common& common, const std::string& enc) {
  const RunConfig cfg = common.Resolve();
  Check(ucr_config_validate(&cfg.resolver, nullptr, nullptr));
  std::vector<std::string> lines;
  if (!enc.empty()) lines.push_back(enc);
  else lines = StdinLines();
  for (const std::string& line : lines) {
    const std::vector<double> m = ParseNumberList(line);
    double theta = 0.0;
    Check(ucr_decode(&cfg.resolver, m.data(), m.size(), &theta));
    std::cout << Fmt(theta) << "\n";
  }
  return kExitOk;
}

int CmdDemoBias(const Common& common, const fs::path& out_dir) {
  const RunConfig cfg = common.Resolve();
  ValidateConfig(cfg);
  if (cfg.study.base.steps < 1) throw Failure{kExitUsage, "--steps must be >= 1"};
  if (cfg.study.repetitions < 1) {
    throw Failure{kExitUsage, "--repetitions must be >= 1"};
  }
  if (cfg.histogram_bins < 1) throw Failure{kExitUsage, "--bins must be >= 1"};

  nlohmann::json config = cfg.ToJson();
  const std::string provenance = ucr::cli::Provenance("demo-bias", config);

  ucr_bias_study* raw = nullptr;
  Check(ucr_bias_study_run(&cfg.study, &cfg.resolver, &cfg.loss, &raw));
  const FitStudy study(raw);

  char* text = nullptr;
  Check(ucr_bias_study_samples_csv(study.get(), provenance.c_str(), &text));
  WriteText(out_dir / "samples.csv", Take(text));
  Check(ucr_bias_study_histogram_csv(study.get(), cfg.histogram_bins,
                                     provenance.c_str(), &text));
  WriteText(out_dir / "histogram.csv", Take(text));
  Check(ucr_bias_study_summary_json(study.get(), provenance.c_str(), &text));
  WriteText(out_dir / "summary.json", Take(text));

  int reps = 0, ae2_wins = 0, angle_wins = 0;
  Check(ucr_bias_study_wins(study.get(), &reps, &ae2_wins, &angle_wins));
  std::cout << "lambda_uc " << Fmt(cfg.loss.lambda_uc) << " vs "
            << Fmt(cfg.study.baseline_lambda_uc) << ": AE^2 wins " << ae2_wins
            << "/" << reps << ", angle wins " << angle_wins << "/" << reps
            << "\n";
  return kExitOk;
}

int CmdDemoBoundary(const Common& common, std::vector<double> eps,
                    const std::string& out) {
  common.Resolve();
  if (eps.empty()) eps = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  nlohmann::json config = {{"epsilons", eps}};
  const std::string provenance = ucr::cli::Provenance("demo-boundary", config);
  char* text = nullptr;
  Check(ucr_boundary_demo_csv(eps.data(), eps.size(), provenance.c_str(), &text));
  const std::string csv = Take(text);
  if (out.empty()) std::cout << csv;
  else WriteText(out, csv);
  return kExitOk;
}

Dataset LoadDataset(const std::string& ann_dir, const std::string& image_dir) {
  ucr_dataset* raw = nullptr;
  Check(ucr_dataset_create(&raw));
  Dataset ds(raw);
  Check(ucr_dataset_load_dir(ds.get(), ann_dir.c_str(),
                             image_dir.empty() ? nullptr : image_dir.c_str()));
  return ds;
}

int CmdStats(const Common& common, const std::string& ann,
             const std::string& images, int bins, const fs::path& out_dir) {
  common.Resolve();
  const Dataset ds = LoadDataset(ann, images);
  nlohmann::json config = {{"annotations", ann}, {"images", images},
                           {"angle_bins", bins}};
  const std::string provenance = ucr::cli::Provenance("stats", config);
  char* csv = nullptr;
  char* json = nullptr;
  std::size_t failures = 0;
  Check(ucr_dataset_stats(ds.get(), bins, provenance.c_str(), &csv, &json,
                          &failures));
  WriteText(out_dir / "stats.csv", Take(csv));
  WriteText(out_dir / "stats.json", Take(json));
  if (failures) {
    std::cerr << failures << " annotation(s) could not be converted to boxes\n";
  }
  std::cout << ucr_dataset_record_count(ds.get()) << " instances in "
            << ucr_dataset_image_count(ds.get()) << " images\n";
  return kExitOk;
}

int CmdClean(const Common& common, const std::string& ann,
             const std::string& images, const fs::path& out_dir) {
  common.Resolve();
  const Dataset ds = LoadDataset(ann, images);
  nlohmann::json config = {{"annotations", ann}, {"images", images}};
  const std::string provenance = ucr::cli::Provenance("clean", config);

  ucr_dataset* raw = nullptr;
  char* report = nullptr;
  Check(ucr_dataset_clean(ds.get(), &raw, &report));
  const Dataset cleaned(raw);
  const std::string report_text = Take(report);

  Check(ucr_dataset_write_dir(cleaned.get(), (out_dir / "labelTxt").c_str()));
  WriteText(out_dir / "clean_report.jsonl",
            nlohmann::json{{"provenance", nlohmann::json::parse(provenance)}}
                    .dump() +
                "\n" + report_text);
  WriteText(out_dir / "provenance.json",
            nlohmann::json::parse(provenance).dump(2) + "\n");
  const std::size_t removed =
      ucr_dataset_image_count(ds.get()) - ucr_dataset_image_count(cleaned.get());
  std::cout << "kept " << ucr_dataset_image_count(cleaned.get())
            << " images, removed " << removed << "\n";
  return kExitOk;
}

int CmdEval(const Common& common, const std::string& gt_dir,
            const std::string& det_path, bool keep_difficult,
            const std::string& out) {
  common.Resolve();
  const Dataset gts = LoadDataset(gt_dir, "");
  ucr_detections* raw = nullptr;
  Check(ucr_detections_create(&raw));
  const Detections dets(raw);
  Check(ucr_detections_parse(dets.get(), ReadText(det_path).c_str()));

  ucr_eval_result* raw_res = nullptr;
  Check(ucr_evaluate(dets.get(), gts.get(), keep_difficult ? 0 : 1, &raw_res));
  const EvalResult res(raw_res);

  nlohmann::json config = {{"ground_truth", gt_dir},
                           {"detections", det_path},
                           {"ignore_difficult", !keep_difficult}};
  const std::string provenance = ucr::cli::Provenance("eval", config);
  char* text = nullptr;
  if (!out.empty()) {
    Check(ucr_eval_result_json(res.get(), provenance.c_str(), &text));
    WriteText(out, Take(text));
  }
  std::size_t n_warn = 0;
  Check(ucr_eval_result_warnings(res.get(), &n_warn, &text));
  for (const auto& w : nlohmann::json::parse(Take(text))) {
    std::cerr << "warning: " << w.get<std::string>() << "\n";
  }
  Check(ucr_eval_result_table(res.get(), &text));
  std::cout << Take(text);
  return kExitOk;
}

int CmdConvert(const Common& common, const std::string& to,
               const std::string& in, const std::string& out) {
  common.Resolve();
  nlohmann::json config = {{"to", to}, {"input", in}};
  const std::string provenance = ucr::cli::Provenance("convert", config);
  if (to == "rbox") {
    const Dataset ds = LoadDataset(in, "");
    char* text = nullptr;
    Check(ucr_dataset_rbox_csv(ds.get(), provenance.c_str(), &text));
    WriteText(out, Take(text));
    std::cout << "wrote " << ucr_dataset_record_count(ds.get()) << " boxes\n";
    return kExitOk;
  }
  if (to == "dota") {
    ucr_dataset* raw = nullptr;
    Check(ucr_dataset_create(&raw));
    const Dataset ds(raw);
    Check(ucr_dataset_add_rbox_csv(ds.get(), ReadText(in).c_str()));
    Check(ucr_dataset_write_dir(ds.get(), out.c_str()));
    WriteText(fs::path(out) / "provenance.json",
              nlohmann::json::parse(provenance).dump(2) + "\n");
    std::cout << "wrote " << ucr_dataset_image_count(ds.get()) << " files\n";
    return kExitOk;
  }
  throw Failure{kExitUsage, "--to must be 'rbox' or 'dota'"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit-cycle angle resolver toolkit (version " +
               std::string(ucr_version()) + ")"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ucr_version()));

  Common common;
  app.add_option("--config", common.config_path, "TOML run configuration");

  int rc = kExitOk;
  auto run = [&rc](auto&& fn) {
    return [&rc, fn = std::forward<decltype(fn)>(fn)] { rc = fn(); };
  };

  std::vector<double> thetas;
  auto* encode = app.add_subcommand("encode", "Encode le90 angles");
  encode->add_option("--theta", thetas, "Angle(s) in radians; stdin if absent");
  common.overrides.AddResolver(encode);
  encode->callback(run([&] { return CmdEncode(common, thetas); }));

  std::string enc;
  auto* decode = app.add_subcommand("decode", "Decode encodings to le90 angles");
  decode->add_option("--enc", enc, "Comma-separated encoding; stdin if absent");
  common.overrides.AddResolver(decode);
  decode->callback(run([&] { return CmdDecode(common, enc); }));

  std::string bias_out = "demo_bias_out";
  auto* bias = app.add_subcommand("demo-bias",
                                  "Paired constrained/unconstrained fit study");
  bias->add_option("--out", bias_out, "Output directory");
  common.overrides.AddResolver(bias);
  common.overrides.AddLoss(bias);
  common.overrides.AddFit(bias);
  bias->callback(run([&] { return CmdDemoBias(common, bias_out); }));

  std::vector<double> eps;
  std::string boundary_out;
  auto* boundary = app.add_subcommand("demo-boundary",
                                      "Boundary discontinuity table");
  boundary->add_option("--eps", eps, "Epsilon ladder");
  boundary->add_option("--out", boundary_out, "CSV path; stdout if absent");
  boundary->callback(run([&] { return CmdDemoBoundary(common, eps, boundary_out); }));

  std::string ann, images, out_dir = "stats_out";
  int bins = 36;
  auto* stats = app.add_subcommand("stats", "Per-category dataset statistics");
  stats->add_option("--ann", ann, "DOTA annotation directory")->required();
  stats->add_option("--images", images, "Image directory (optional)");
  stats->add_option("--angle-bins", bins, "Angle histogram bins")
      ->check(CLI::PositiveNumber);
  stats->add_option("--out", out_dir, "Output directory");
  stats->callback(run([&] { return CmdStats(common, ann, images, bins, out_dir); }));

  std::string clean_ann, clean_images, clean_out = "clean_out";
  auto* clean = app.add_subcommand("clean",
                                   "Drop duplicate and unannotated images");
  clean->add_option("--ann", clean_ann, "DOTA annotation directory")->required();
  clean->add_option("--images", clean_images,
                    "Image directory used for duplicate detection");
  clean->add_option("--out", clean_out, "Output directory");
  clean->callback(run([&] { return CmdClean(common, clean_ann, clean_images, clean_out); }));

  std::string gt_dir, det_path, eval_out;
  bool keep_difficult = false;
  auto* eval = app.add_subcommand("eval", "AP50/AP75/mAP of rotated detections");
  eval->add_option("--gt", gt_dir, "DOTA ground-truth directory")->required();
  eval->add_option("--det", det_path, "Detections (CSV or JSON lines)")->required();
  eval->add_flag("--keep-difficult", keep_difficult,
                 "Score difficult ground truths like the rest");
  eval->add_option("--out", eval_out, "Result JSON path");
  eval->callback(run([&] { return CmdEval(common, gt_dir, det_path, keep_difficult, eval_out); }));

  std::string to, conv_in, conv_out;
  auto* convert = app.add_subcommand("convert",
                                     "DOTA polygons <-> rotated-box CSV");
  convert->add_option("--to", to, "rbox or dota")->required();
  convert->add_option("--in", conv_in, "Input directory (rbox) or CSV (dota)")
      ->required();
  convert->add_option("--out", conv_out, "Output CSV (rbox) or directory (dota)")
      ->required();
  convert->callback(run([&] { return CmdConvert(common, to, conv_in, conv_out); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  }
  return rc;
}
