#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace statemine {

enum class Severity { Warning, Error };

// 1-based source position; line == 0 means "no location".
struct SourceLocation {
  std::string file;
  int line = 0;
  int column = 0;

  bool valid() const { return line > 0; }
  std::string to_string() const;
  bool operator==(const SourceLocation&) const = default;
};

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  SourceLocation location;

  // "file:line:col: warning: message" (location prefix omitted when absent)
  std::string to_string() const;
  bool operator==(const Diagnostic&) const = default;
};

Diagnostic warning(std::string message, SourceLocation location = {});
Diagnostic error(std::string message, SourceLocation location = {});

class Error : public std::runtime_error {
 public:
  explicit Error(Diagnostic diag);
  Error(std::string message, SourceLocation location = {});

  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

}  // namespace statemine
