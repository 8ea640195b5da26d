// Copyright 2026 The Authors.
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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace predim {

enum class ErrorKind {
  DivisionByZero,
  TowerMismatch,
  PrecisionExhausted,
  DuplicateName,
  BadIsolation,
  BadMinPoly,
  SizeGuard,
  InvalidHandle,
  NotInClass,
  NotClosed,
  NotMinimal,
  NotClosedInFactor,
  NotFreeOverBase,
  WitnessCutUnsatisfiable,
  ConstructionInfeasible,
  RelationSearchExhausted,
  Unsupported,
  SyntaxError,
  UnknownIdentifier,
  InvariantViolation,
  UsageError,
  IoError,
  Internal,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::TowerMismatch: return "TowerMismatch";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::BadIsolation: return "BadIsolation";
    case ErrorKind::BadMinPoly: return "BadMinPoly";
    case ErrorKind::SizeGuard: return "SizeGuard";
    case ErrorKind::InvalidHandle: return "InvalidHandle";
    case ErrorKind::NotInClass: return "NotInClass";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::NotClosedInFactor: return "NotClosedInFactor";
    case ErrorKind::NotFreeOverBase: return "NotFreeOverBase";
    case ErrorKind::WitnessCutUnsatisfiable: return "WitnessCutUnsatisfiable";
    case ErrorKind::ConstructionInfeasible: return "ConstructionInfeasible";
    case ErrorKind::RelationSearchExhausted: return "RelationSearchExhausted";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

/// Line/column in a manifest, both 1-based.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// The single exception type of the library. `witness` carries point names
/// when the failure has a concrete certificate (a violating subset, an
/// intermediate closed set, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Error(ErrorKind kind, const std::string& message, SourcePos pos)
      : std::runtime_error(message), kind_(kind), pos_(pos) {}
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::string> witness)
      : std::runtime_error(message), kind_(kind), witness_(std::move(witness)) {}

  Error(ErrorKind kind, const std::string& message, SourcePos pos, std::vector<std::string> witness)
      : std::runtime_error(message), kind_(kind), pos_(pos), witness_(std::move(witness)) {}

  ErrorKind kind() const { return kind_; }
  const std::optional<SourcePos>& position() const { return pos_; }
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  ErrorKind kind_;
  std::optional<SourcePos> pos_;
  std::vector<std::string> witness_;
};

}  // namespace predim
