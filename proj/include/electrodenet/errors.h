// Copyright 2026 The ElectrodeNet Authors.
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

#ifndef ELECTRODENET_ERRORS_H_
#define ELECTRODENET_ERRORS_H_

#include <stdexcept>
#include <string>

namespace electrodenet {

// Precondition violations: wrong sizes, out-of-range counts, bad configs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Audio that is not 16 kHz mono. The message always contains
// "expected 16000 Hz" when the rate is the problem.
class SampleRateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Signal too short for an intelligibility measure.
class TooShortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Base class for binary/text file loading problems.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public LoadError {
 public:
  using LoadError::LoadError;
};

class VersionError : public LoadError {
 public:
  using LoadError::LoadError;
};

class TruncatedError : public LoadError {
 public:
  using LoadError::LoadError;
};

class ChecksumError : public LoadError {
 public:
  using LoadError::LoadError;
};

}  // namespace electrodenet

#endif  // ELECTRODENET_ERRORS_H_
