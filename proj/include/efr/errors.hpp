/*
 * efr: elastic functional regression for scalar-on-function problems
 *
 * Copyright 2026 The efr authors
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

namespace efr {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two functions that must live on the same grid do not.
class GridMismatch : public Error {
public:
  using Error::Error;
};

/// A query point fell outside the [0,1] domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// An argument violated a documented precondition.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// An operation requiring a non-empty collection received an empty one.
class EmptyList : public Error {
public:
  using Error::Error;
};

/// A polynomial fit had a rank-deficient design (e.g. all abscissae equal).
class DegenerateFit : public Error {
public:
  using Error::Error;
};

/// A least-squares design matrix was singular.
class SingularDesign : public Error {
public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
public:
  using Error::Error;
};

/// A file could not be parsed; carries the 1-based line number.
class ParseError : public Error {
public:
  ParseError(const std::string& path, long line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

}  // namespace efr
