#pragma once

#include <string>
#include <vector>

#include "statemine/diagnostics.hpp"
#include "statemine/model.hpp"

namespace statemine::java {

enum class TokenKind { Identifier, Keyword, Punctuation, Literal, EndOfFile };

struct Token {
  TokenKind kind = TokenKind::EndOfFile;
  std::string text;
  int line = 1;
  int column = 1;
};

// Comments are skipped; positions are 1-based. Throws Error on unterminated
// comments/strings and on characters outside the subset.
std::vector<Token> tokenize(const std::string& text, const std::string& file = "");

struct ParseOptions {
  // When set, unsupported constructs abort the parse instead of being
  // skipped with a warning.
  bool strict = false;
};

struct ProgramSource {
  std::string path;
  std::string text;
};

// Parses one token stream into a fresh CompilationUnit in m and returns its
// node id. Syntax errors throw; unsupported constructs are reported through
// `diags` (or throw under strict).
std::string parse_unit(const std::vector<Token>& tokens, Model& m, const std::string& path,
                       const ParseOptions& opts, std::vector<Diagnostic>& diags);

std::string parse_source(const std::string& path, const std::string& text, Model& m,
                         const ParseOptions& opts, std::vector<Diagnostic>& diags);

// Parses every source, sorted by path so that output never depends on the
// order the caller enumerated files in.
void parse_program(std::vector<ProgramSource> sources, Model& m, const ParseOptions& opts,
                   std::vector<Diagnostic>& diags);

// Resolves `extends` names, leading identifiers of reference chains, and
// switch-case labels to cross-reference targets. Never fatal: unresolved
// names and ambiguities come back as warnings.
std::vector<Diagnostic> resolve_names(Model& m);

// Debug emitter: prints the supported subset back as Java source. Re-parsing
// the output yields a tree-equal model.
std::string write_java(const Model& m, const std::string& unit_id);

}  // namespace statemine::java
