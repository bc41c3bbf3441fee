// Copyright 2026 The Varfix Authors.
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


#ifndef VARFIX_IO_H_
#define VARFIX_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace varfix {

std::string ReadFile(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a half-written file.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view data);

// Lines without their terminators; a trailing empty line is dropped.
std::vector<std::string> SplitLines(std::string_view text);

}  // namespace varfix

#endif  // VARFIX_IO_H_
