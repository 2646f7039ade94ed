// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathlap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid model parameter, probability or configuration bound.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Underlying undirected graph is not connected; diameter undefined.
class ConnectivityError : public Error {
 public:
  using Error::Error;
};

class DegenerateGraphError : public Error {
 public:
  using Error::Error;
};

// Step size would make a diagonal entry of the update operator negative.
class StepSizeError : public Error {
 public:
  StepSizeError(const std::string& what, double max_admissible)
      : Error(what), max_admissible_(max_admissible) {}

  double max_admissible() const noexcept { return max_admissible_; }

 private:
  double max_admissible_;
};

// Dataset generation could not produce the requested samples.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Malformed file or schema mismatch. line() is 1-based, 0 when unknown.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pathlap
