/*
 * Copyright 2026 The CLWE Reductions Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CLWE_CLI_H_
#define CLWE_CLI_H_

#include <iosfwd>

namespace clwe {

inline constexpr int kExitOk = 0;
inline constexpr int kExitTestFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `clwe` tool. JSON results go to `out`, logs and usage
// text to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace clwe

#endif  // CLWE_CLI_H_
