/*
 * Copyright (C) 2026 The Shutter Sim Authors
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
 *
 */

#ifndef SHUTTER__ERRORS_HPP
#define SHUTTER__ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shutter {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Input data (scenario, events, trace) violates a referential or range rule.
class ValidationError : public Error
{
public:
  using Error::Error;
};

/// A tree, state machine or catalogue is malformed or names something that
/// does not exist. Raised before any tick runs.
class ConfigError : public Error
{
public:
  using Error::Error;
};

/// Internal bookkeeping went wrong (e.g. an emission stamped with the wrong
/// tick). Indicates a bug in a behavior, not bad input.
class ConsistencyError : public Error
{
public:
  using Error::Error;
};

/// Syntax error in a scenario or tree file. Line and column are 1-based and
/// point at the first offending character.
class ParseError : public Error
{
public:
  ParseError(int line, int column, std::string message, std::string expected)
  : Error(format(line, column, message, expected)),
    line_(line),
    column_(column),
    message_(std::move(message)),
    expected_(std::move(expected))
  {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& expected() const noexcept { return expected_; }

private:
  static std::string format(
    int line, int column, const std::string& message,
    const std::string& expected)
  {
    std::string out = std::to_string(line) + ":" + std::to_string(column) +
      ": " + message;
    if (!expected.empty()) {
      out += " (expected " + expected + ")";
    }
    return out;
  }

  int line_;
  int column_;
  std::string message_;
  std::string expected_;
};

}  // namespace shutter

#endif  // SHUTTER__ERRORS_HPP
