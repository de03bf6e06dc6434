// Copyright 2026 The wincc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wincc::cli {

enum ExitCode : int {
  Win = 0,
  Lose = 1,
  Inconclusive = 2,
  Disagreement = 70,
  Usage = 64,
  DataError = 65,
  Software = 70,
  Io = 74,
  Budget = 75,
};

/// `args[0]` is the program name. Machine output goes to `out` (or files),
/// progress and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wincc::cli
