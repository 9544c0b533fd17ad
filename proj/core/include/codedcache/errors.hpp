/*
 * Copyright 2026 The codedcache Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace codedcache {

// Precondition violated by a caller-supplied value.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caching distribution breaks p_f <= 1/M or sum(p) = 1.
class ConstraintViolation : public std::domain_error {
 public:
  ConstraintViolation(const std::string& what, std::size_t file)
      : std::domain_error(what), file_(file) {}

  // 1-based offending file index, 0 when the violation is global (total mass).
  [[nodiscard]] std::size_t file() const noexcept { return file_; }

 private:
  std::size_t file_;
};

// Graph too large for the exact chromatic oracle.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A coloring that is not a proper partition into independent sets.
class ColoringError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DecodeFailure : public std::runtime_error {
 public:
  DecodeFailure(const std::string& what, std::size_t user, std::size_t file, std::size_t packet)
      : std::runtime_error(what), user_(user), file_(file), packet_(packet) {}

  [[nodiscard]] std::size_t user() const noexcept { return user_; }
  [[nodiscard]] std::size_t file() const noexcept { return file_; }
  [[nodiscard]] std::size_t packet() const noexcept { return packet_; }

 private:
  std::size_t user_;
  std::size_t file_;
  std::size_t packet_;
};

// Malformed experiment configuration (CLI flags or key=value file).
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace codedcache
