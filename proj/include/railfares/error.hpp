#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace railfares {

enum class ErrorKind {
  io,
  missing_file,
  schema,
  field,
  duplicate_key,
  referential,
  unknown_station,
  unknown_ticket,
  no_flow,
  empty_input,
  budget_order,
  spec,
  config,
  network,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// One located problem in an input. `line` is 1-based; 0 means "whole file"
/// or "not file-related".
struct Diagnostic {
  ErrorKind kind = ErrorKind::field;
  std::string file;
  std::size_t line = 0;
  std::string column;
  std::string message;

  std::string to_string() const;
};

/// Base of every error the library throws. Carries at least one diagnostic;
/// the exception's kind is the kind of the first one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  explicit Error(std::vector<Diagnostic> diagnostics);

  ErrorKind kind() const noexcept { return diagnostics_.front().kind; }
  const std::vector<Diagnostic>& diagnostics() const noexcept {
    return diagnostics_;
  }

 private:
  std::vector<Diagnostic> diagnostics_;
};

template <ErrorKind K>
class KindError : public Error {
 public:
  explicit KindError(const std::string& message) : Error(K, message) {}
  explicit KindError(std::vector<Diagnostic> diagnostics)
      : Error(std::move(diagnostics)) {}
};

using IoError = KindError<ErrorKind::io>;
using MissingFileError = KindError<ErrorKind::missing_file>;
using SchemaError = KindError<ErrorKind::schema>;
using FieldError = KindError<ErrorKind::field>;
using DuplicateKeyError = KindError<ErrorKind::duplicate_key>;
using ReferentialError = KindError<ErrorKind::referential>;
using UnknownStationError = KindError<ErrorKind::unknown_station>;
using UnknownTicketError = KindError<ErrorKind::unknown_ticket>;
using NoFlowError = KindError<ErrorKind::no_flow>;
using EmptyInputError = KindError<ErrorKind::empty_input>;
using BudgetOrderError = KindError<ErrorKind::budget_order>;
using SpecError = KindError<ErrorKind::spec>;
using ConfigError = KindError<ErrorKind::config>;
using NetworkError = KindError<ErrorKind::network>;

/// Throws the typed exception matching diagnostics.front().kind, carrying
/// all of them. Requires a non-empty vector.
[[noreturn]] void throw_diagnostics(std::vector<Diagnostic> diagnostics);

}  // namespace railfares
