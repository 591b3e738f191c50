// Copyright 2026 The QCNN-BP Authors
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

#include <complex>
#include <stdexcept>
#include <string>

namespace qcnn {

using Complex = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied configuration or argument violates a precondition.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Shapes, lengths or index ranges do not agree.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A file on disk does not match its declared format.
class FormatError : public Error {
  public:
    using Error::Error;
};

} // namespace qcnn
