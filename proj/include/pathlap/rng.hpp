// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pathlap {

/// Engine used for every random draw in the library. std::mt19937_64 is
/// specified bit-exactly by the standard; the standard distributions are not,
/// so draws go through the helpers below instead.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream splitting rule: the child seed is a chained SplitMix64 hash of the
/// parent seed and each coordinate in order. Used as
/// derive_seed(master, {split, index, attempt}) so that any sample can be
/// produced independently of which worker runs it.
std::uint64_t derive_seed(std::uint64_t parent,
                          std::initializer_list<std::uint64_t> coords) noexcept;

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Engine& eng) noexcept;

/// Uniform integer in [0, bound). bound must be > 0.
std::uint64_t uniform_index(Engine& eng, std::uint64_t bound) noexcept;

/// True with probability p (p outside [0,1] is clamped by comparison).
inline bool bernoulli(Engine& eng, double p) noexcept {
  return uniform01(eng) < p;
}

}  // namespace pathlap
