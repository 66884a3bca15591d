/*
 * Copyright 2026 The Soilcast Authors.
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

#ifndef SOILCAST_FILE_IO_HPP_
#define SOILCAST_FILE_IO_HPP_

#include <string>

namespace soilcast {

// Writes to "<path>.tmp" and renames over `path`, creating parent
// directories. Readers never observe a partially written file.
void write_file_atomic(const std::string& path, const std::string& content);

// Appends `content` to `path`, creating it if needed.
void append_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace soilcast

#endif  // SOILCAST_FILE_IO_HPP_
