// Copyright 2026 the cueval authors
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

#pragma once

#include <stdexcept>

namespace cueval {

// Error taxonomy used across the library. The CLI maps these to process
// exit codes, so new error sites should pick the narrowest fitting class.

/// A file could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File content (raster, mesh, JSON config, ...) is malformed or violates a
/// documented format constraint. Messages name the offending line or byte
/// offset where possible.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two grids that must share a pixel lattice do not. Evaluation never
/// resamples silently; mismatched inputs are rejected with this error.
class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cueval
