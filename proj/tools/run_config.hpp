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

#ifndef UCR_TOOLS_RUN_CONFIG_HPP_
#define UCR_TOOLS_RUN_CONFIG_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "ucr/ucr.h"

namespace ucr::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat "section.key" -> raw value text, read from the small TOML subset the
// run files use: [section] headers, key = value lines, '#' comments, bare
// numbers/booleans and double-quoted strings.
std::map<std::string, std::string> ParseTomlSubset(std::string_view text);

// Every tunable of a scripted run. Resolution order: built-in defaults, then
// the TOML file, then UCR_* environment variables, then command-line flags.
struct RunConfig {
  ucr_resolver_config resolver{};
  ucr_loss_config loss{};
  ucr_bias_study_config study{};
  int histogram_bins = 40;

  RunConfig();

  // Keys are "section.key" (file) or bare "key" (env/flags); both resolve
  // to the same setting. Throws UsageError on unknown keys or bad values.
  void Set(std::string_view key, std::string_view value);

  void ApplyToml(std::string_view text);
  // Reads UCR_<KEY> for every known key, e.g. UCR_LAMBDA_UC.
  void ApplyEnvironment();

  nlohmann::json ToJson() const;
};

// The provenance object embedded in every artifact.
std::string Provenance(std::string_view command, const nlohmann::json& config);

}  // namespace ucr::cli

#endif  // UCR_TOOLS_RUN_CONFIG_HPP_
