// Copyright 2026 The advforge Authors
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

#ifndef ADVFORGE_TOOLS_CLI_HPP_
#define ADVFORGE_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace advforge::cli {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitFault = 1,
  kExitUsage = 2,
  kExitNotSucceeded = 3,
};

// Entry point shared by main() and the tests. `args` excludes the program
// name. Standard streams are injected so runs can be captured.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace advforge::cli

#endif  // ADVFORGE_TOOLS_CLI_HPP_
