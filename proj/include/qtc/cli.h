// Copyright 2026 The QTC Authors
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

#ifndef _QTC_CLI_H
#define _QTC_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace qtc {

inline constexpr int EXIT_OK = 0;
inline constexpr int EXIT_USAGE = 1;
inline constexpr int EXIT_DATA = 2;

/// Entry point of the `qtc` tool. `args` excludes the program name.
/// Returns 0 on success, 1 on usage or configuration errors, 2 on data or
/// format errors.
int cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qtc

#endif
