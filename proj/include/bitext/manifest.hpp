// Copyright 2026 The bitext Authors
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

#ifndef BITEXT_MANIFEST_HPP_
#define BITEXT_MANIFEST_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace bitext {

inline constexpr const char* kToolVersion = "0.1.0";

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

// Provenance record written next to every command's output.
class RunManifest {
 public:
  explicit RunManifest(std::string command) : command_(std::move(command)) {}

  void set_parameter(const std::string& key, const std::string& value);
  // Hashes the file now; throws kIo if it cannot be read.
  void add_input(const std::filesystem::path& path);
  void set_wall_time_ms(std::uint64_t ms) { wall_time_ms_ = ms; }

  const std::string& command() const { return command_; }
  const std::map<std::string, std::string>& parameters() const {
    return parameters_;
  }

  struct Input {
    std::string path;
    std::string sha256;
  };
  const std::vector<Input>& inputs() const { return inputs_; }

  std::string to_json() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::string command_;
  std::map<std::string, std::string> parameters_;
  std::vector<Input> inputs_;
  std::uint64_t wall_time_ms_ = 0;
};

}  // namespace bitext

#endif  // BITEXT_MANIFEST_HPP_
