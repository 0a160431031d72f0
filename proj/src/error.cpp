#include "railfares/error.hpp"

#include <cassert>

namespace railfares {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::io: return "IoError";
    case ErrorKind::missing_file: return "MissingFileError";
    case ErrorKind::schema: return "SchemaError";
    case ErrorKind::field: return "FieldError";
    case ErrorKind::duplicate_key: return "DuplicateKeyError";
    case ErrorKind::referential: return "ReferentialError";
    case ErrorKind::unknown_station: return "UnknownStationError";
    case ErrorKind::unknown_ticket: return "UnknownTicketError";
    case ErrorKind::no_flow: return "NoFlowError";
    case ErrorKind::empty_input: return "EmptyInputError";
    case ErrorKind::budget_order: return "BudgetOrderError";
    case ErrorKind::spec: return "SpecError";
    case ErrorKind::config: return "ConfigError";
    case ErrorKind::network: return "NetworkError";
  }
  return "Error";
}

std::string Diagnostic::to_string() const {
  std::string out{railfares::to_string(kind)};
  if (!file.empty()) {
    out += ": ";
    out += file;
    if (line != 0) out += ":" + std::to_string(line);
    if (!column.empty()) out += " [" + column + "]";
  }
  out += ": ";
  out += message;
  return out;
}

namespace {

std::string join(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += '\n';
    out += d.to_string();
  }
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message)
    : Error(std::vector<Diagnostic>{Diagnostic{kind, {}, 0, {}, message}}) {}

Error::Error(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join(diagnostics)),
      diagnostics_(std::move(diagnostics)) {
  assert(!diagnostics_.empty());
}

void throw_diagnostics(std::vector<Diagnostic> diagnostics) {
  assert(!diagnostics.empty());
  switch (diagnostics.front().kind) {
    case ErrorKind::io: throw IoError(std::move(diagnostics));
    case ErrorKind::missing_file: throw MissingFileError(std::move(diagnostics));
    case ErrorKind::schema: throw SchemaError(std::move(diagnostics));
    case ErrorKind::field: throw FieldError(std::move(diagnostics));
    case ErrorKind::duplicate_key: throw DuplicateKeyError(std::move(diagnostics));
    case ErrorKind::referential: throw ReferentialError(std::move(diagnostics));
    case ErrorKind::unknown_station: throw UnknownStationError(std::move(diagnostics));
    case ErrorKind::unknown_ticket: throw UnknownTicketError(std::move(diagnostics));
    case ErrorKind::no_flow: throw NoFlowError(std::move(diagnostics));
    case ErrorKind::empty_input: throw EmptyInputError(std::move(diagnostics));
    case ErrorKind::budget_order: throw BudgetOrderError(std::move(diagnostics));
    case ErrorKind::spec: throw SpecError(std::move(diagnostics));
    case ErrorKind::config: throw ConfigError(std::move(diagnostics));
    case ErrorKind::network: throw NetworkError(std::move(diagnostics));
  }
  throw Error(std::move(diagnostics));
}

}  // namespace railfares
