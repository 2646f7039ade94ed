// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#include "pathlap/rng.hpp"

#include <limits>

namespace pathlap {

std::uint64_t derive_seed(std::uint64_t parent,
                          std::initializer_list<std::uint64_t> coords) noexcept {
  std::uint64_t h = mix64(parent);
  for (auto c : coords) {
    h = mix64(h ^ mix64(c + 0x632be59bd9b4e019ULL));
  }
  return h;
}

double uniform01(Engine& eng) noexcept {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_index(Engine& eng, std::uint64_t bound) noexcept {
  // Rejection on the top partial bucket keeps the draw unbiased.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace pathlap
