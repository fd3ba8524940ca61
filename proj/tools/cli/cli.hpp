// Copyright 2026 The rvse Authors
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


#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rvse::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitIo = 3;

/// `start:stop:count` to `count` evenly spaced points (count >= 1).
std::vector<double> parse_grid(std::string_view text);

/// Loads `key=value` lines, optionally `#`-prefixed, up to the first
/// uncommented line without `=` (a CSV header). `info.*` keys are dropped.
std::vector<std::pair<std::string, std::string>> load_config(const std::string& path);

/// Hex SHA-256 of a file's bytes.
std::string file_sha256(const std::string& path);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rvse::cli
