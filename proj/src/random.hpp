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

// Portable seeded sampling. The standard distributions are implementation
// defined, so results would differ between standard libraries.

#ifndef BITEXT_SRC_RANDOM_HPP_
#define BITEXT_SRC_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace bitext::rnd {

using Engine = std::mt19937_64;

// Uniform integer in [0, n) by rejection; n must be >= 1.
inline std::uint64_t uniform_index(Engine& rng, std::uint64_t n) {
  const std::uint64_t limit = Engine::max() - (Engine::max() % n + 1) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x <= limit) return x % n;
  }
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_unit(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle(std::vector<T>& items, Engine& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace bitext::rnd

#endif  // BITEXT_SRC_RANDOM_HPP_
