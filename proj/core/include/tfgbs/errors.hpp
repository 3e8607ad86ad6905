// Copyright 2026 The tfgbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TFGBS_ERRORS_HPP_
#define TFGBS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tfgbs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments: bad indices, non-unitary inputs, overlapping sets.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Input exceeds a hard desk-scale cap (permanent n > 14, hafnian n > 16).
class SizeError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// Numerical failure or physically degenerate result.
class NumericError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tfgbs

#endif  // TFGBS_ERRORS_HPP_
