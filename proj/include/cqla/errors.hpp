// Copyright 2026 The CQLA Simulator Authors
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
#include <string>

namespace cqla {

/// Error categories. Each maps onto a distinct CLI exit code.
enum class ErrorKind { Domain, Config, Fidelity, Io, UnsupportedGate };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Argument outside an operation's domain (unknown level, n = 0, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::Domain, what) {}
};

/// Malformed or incomplete configuration / calibration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::Config, what) {}
};

/// A level-mix that violates the concatenated-code failure budget.
class FidelityError : public Error {
 public:
  FidelityError(const std::string& what, double offending_fraction)
      : Error(ErrorKind::Fidelity, what), fraction_(offending_fraction) {}
  double offending_fraction() const noexcept { return fraction_; }

 private:
  double fraction_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

/// A gate that the classical reversible simulator cannot evaluate.
class UnsupportedGateError : public Error {
 public:
  explicit UnsupportedGateError(const std::string& what)
      : Error(ErrorKind::UnsupportedGate, what) {}
};

/// Process exit codes used by the command-line tool.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return 2;
    case ErrorKind::Fidelity: return 3;
    case ErrorKind::Io: return 4;
    case ErrorKind::Domain: return 5;
    case ErrorKind::UnsupportedGate: return 6;
  }
  return 1;
}

}  // namespace cqla
