#include "statemine/diagnostics.hpp"

#include <sstream>

namespace statemine {

std::string SourceLocation::to_string() const {
  if (!valid()) return {};
  std::ostringstream os;
  os << file << ':' << line << ':' << column;
  return os.str();
}

std::string Diagnostic::to_string() const {
  std::string out;
  if (location.valid()) {
    out += location.to_string();
    out += ": ";
  }
  out += severity == Severity::Warning ? "warning: " : "error: ";
  out += message;
  return out;
}

Diagnostic warning(std::string message, SourceLocation location) {
  return Diagnostic{Severity::Warning, std::move(message), std::move(location)};
}

Diagnostic error(std::string message, SourceLocation location) {
  return Diagnostic{Severity::Error, std::move(message), std::move(location)};
}

Error::Error(Diagnostic diag) : std::runtime_error(diag.to_string()), diag_(std::move(diag)) {}

Error::Error(std::string message, SourceLocation location)
    : Error(Diagnostic{Severity::Error, std::move(message), std::move(location)}) {}

}  // namespace statemine
