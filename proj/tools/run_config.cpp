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

#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace ucr::cli {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double ToDouble(std::string_view key, std::string_view v) {
  double out = 0.0;
  const char* first = v.data();
  if (!v.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw UsageError("'" + std::string(key) + "' expects a number, got '" +
                     std::string(v) + "'");
  }
  return out;
}

long long ToInteger(std::string_view key, std::string_view v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw UsageError("'" + std::string(key) + "' expects an integer, got '" +
                     std::string(v) + "'");
  }
  return out;
}

int ToKind(std::string_view key, std::string_view v) {
  std::string lower(v);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "l1" || lower == "absolute") return UCR_DEVIATION_ABSOLUTE;
  if (lower == "l2" || lower == "mse" || lower == "squared") {
    return UCR_DEVIATION_SQUARED;
  }
  throw UsageError("'" + std::string(key) + "' expects l1 or l2, got '" +
                   std::string(v) + "'");
}

const char* KindName(int kind) {
  return kind == UCR_DEVIATION_SQUARED ? "l2" : "l1";
}

// Keys accepted everywhere, without their section prefix.
const std::vector<std::string>& KnownKeys() {
  static const std::vector<std::string> keys = {
      "dimension",     "angular_frequency", "amplitude",
      "lambda_reg",    "lambda_uc",         "m_invalid",
      "uc_loss_kind",  "reg_loss_kind",     "noise_sigma",
      "init_scale",    "steps",             "learning_rate",
      "seed",          "noise_draws",       "samples",
      "repetitions",   "baseline_lambda_uc", "histogram_bins",
      "init_on_manifold"};
  return keys;
}

}  // namespace

std::map<std::string, std::string> ParseTomlSubset(std::string_view text) {
  std::map<std::string, std::string> out;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    // Strip comments outside of quoted strings.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = Trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw UsageError(where + "unterminated table header");
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw UsageError(where + "expected key = value");
    const std::string key(Trim(line.substr(0, eq)));
    std::string_view value = Trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw UsageError(where + "empty key or value");
    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') {
        throw UsageError(where + "unterminated string");
      }
      value = value.substr(1, value.size() - 2);
    }
    out[section.empty() ? key : section + "." + key] = std::string(value);
  }
  return out;
}

RunConfig::RunConfig() {
  ucr_resolver_config_default(&resolver);
  ucr_loss_config_default(&loss);
  ucr_bias_study_config_default(&study);
}

void RunConfig::Set(std::string_view raw_key, std::string_view value) {
  std::string key(raw_key);
  if (const auto dot = key.rfind('.'); dot != std::string::npos) {
    key = key.substr(dot + 1);
  }
  std::replace(key.begin(), key.end(), '-', '_');
  value = Trim(value);

  if (key == "dimension") resolver.dimension = static_cast<int>(ToInteger(key, value));
  else if (key == "angular_frequency") resolver.angular_frequency = ToDouble(key, value);
  else if (key == "amplitude") resolver.amplitude = ToDouble(key, value);
  else if (key == "lambda_reg") loss.lambda_reg = ToDouble(key, value);
  else if (key == "lambda_uc") loss.lambda_uc = ToDouble(key, value);
  else if (key == "m_invalid") loss.m_invalid = ToDouble(key, value);
  else if (key == "uc_loss_kind") loss.uc_kind = ToKind(key, value);
  else if (key == "reg_loss_kind") loss.reg_kind = ToKind(key, value);
  else if (key == "noise_sigma") study.base.noise_sigma = ToDouble(key, value);
  else if (key == "init_scale") study.base.init_scale = ToDouble(key, value);
  else if (key == "steps") study.base.steps = static_cast<int>(ToInteger(key, value));
  else if (key == "learning_rate") study.base.learning_rate = ToDouble(key, value);
  else if (key == "seed") study.base.seed = static_cast<std::uint64_t>(ToInteger(key, value));
  else if (key == "noise_draws") study.base.noise_draws = static_cast<int>(ToInteger(key, value));
  else if (key == "init_on_manifold") study.base.init_on_manifold = value == "true" || value == "1";
  else if (key == "samples") {
    const long long n = ToInteger(key, value);
    if (n < 1) throw UsageError("'samples' must be at least 1");
    study.samples = static_cast<std::size_t>(n);
  } else if (key == "repetitions") study.repetitions = static_cast<int>(ToInteger(key, value));
  else if (key == "baseline_lambda_uc") study.baseline_lambda_uc = ToDouble(key, value);
  else if (key == "histogram_bins") histogram_bins = static_cast<int>(ToInteger(key, value));
  else throw UsageError("unknown setting '" + std::string(raw_key) + "'");
}

void RunConfig::ApplyToml(std::string_view text) {
  for (const auto& [key, value] : ParseTomlSubset(text)) Set(key, value);
}

void RunConfig::ApplyEnvironment() {
  for (const std::string& key : KnownKeys()) {
    std::string env = "UCR_" + key;
    std::transform(env.begin(), env.end(), env.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (const char* v = std::getenv(env.c_str())) Set(key, v);
  }
}

nlohmann::json RunConfig::ToJson() const {
  return {
      {"resolver",
       {{"dimension", resolver.dimension},
        {"angular_frequency", resolver.angular_frequency},
        {"amplitude", resolver.amplitude}}},
      {"loss",
       {{"lambda_reg", loss.lambda_reg},
        {"lambda_uc", loss.lambda_uc},
        {"m_invalid", loss.m_invalid},
        {"uc_loss_kind", KindName(loss.uc_kind)},
        {"reg_loss_kind", KindName(loss.reg_kind)}}},
      {"fit",
       {{"noise_sigma", study.base.noise_sigma},
        {"init_scale", study.base.init_scale},
        {"steps", study.base.steps},
        {"learning_rate", study.base.learning_rate},
        {"seed", study.base.seed},
        {"noise_draws", study.base.noise_draws},
        {"init_on_manifold", study.base.init_on_manifold != 0},
        {"samples", study.samples},
        {"repetitions", study.repetitions},
        {"baseline_lambda_uc", study.baseline_lambda_uc},
        {"histogram_bins", histogram_bins}}},
  };
}

std::string Provenance(std::string_view command, const nlohmann::json& config) {
  const nlohmann::json p = {{"tool", "ucr"},
                            {"version", ucr_version()},
                            {"command", std::string(command)},
                            {"config", config}};
  return p.dump();
}

}  // namespace ucr::cli
