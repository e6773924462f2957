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

#include "bitext/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "bitext/error.hpp"
#include "tsv.hpp"

namespace bitext {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kInternal, "sha256 unavailable");
  }
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) {
      EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading " + path.string());

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int k = 0; k < len; ++k) {
    hex.push_back(kHex[digest[k] >> 4]);
    hex.push_back(kHex[digest[k] & 0xF]);
  }
  return hex;
}

void RunManifest::set_parameter(const std::string& key, const std::string& value) {
  parameters_[key] = value;
}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs_.push_back({path.string(), sha256_file(path)});
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command_;
  j["tool_version"] = kToolVersion;
  j["parameters"] = parameters_;
  j["inputs"] = nlohmann::json::array();
  for (const Input& in : inputs_) {
    j["inputs"].push_back({{"path", in.path}, {"sha256", in.sha256}});
  }
  j["wall_time_ms"] = wall_time_ms_;
  return j.dump(2) + "\n";
}

void RunManifest::write(const std::filesystem::path& path) const {
  auto out = tsv::open_output(path);
  out << to_json();
  tsv::finish_output(out, path);
}

}  // namespace bitext
