#include "statemine/java_frontend.hpp"

#include <array>
#include <cctype>

namespace statemine::java {

namespace {

const std::array<const char*, 20> kKeywords = {
    "class", "enum",   "extends", "abstract", "public", "private", "protected",
    "static", "void",  "return",  "if",       "else",   "switch",  "case",
    "default", "break", "try",    "catch",    "new",    "throws"};

bool is_keyword(const std::string& s) {
  for (const char* k : kKeywords)
    if (s == k) return true;
  return false;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_part(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> tokenize(const std::string& text, const std::string& file) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  int line = 1, column = 1;

  auto loc = [&](int l, int c) { return SourceLocation{file, l, c}; };
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++i;
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(c);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(text[i]);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
      int start_line = line, start_col = column;
      advance('/');
      advance('*');
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '*' && i + 1 < text.size() && text[i + 1] == '/') {
          advance('*');
          advance('/');
          closed = true;
          break;
        }
        advance(text[i]);
      }
      if (!closed) throw Error("unterminated comment", loc(start_line, start_col));
      continue;
    }

    int tok_line = line, tok_col = column;
    if (ident_start(c)) {
      std::string word;
      while (i < text.size() && ident_part(text[i])) {
        word.push_back(text[i]);
        advance(text[i]);
      }
      tokens.push_back(Token{is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, word,
                             tok_line, tok_col});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        digits.push_back(text[i]);
        advance(text[i]);
      }
      tokens.push_back(Token{TokenKind::Literal, digits, tok_line, tok_col});
      continue;
    }
    if (c == '"') {
      std::string raw;
      raw.push_back('"');
      advance('"');
      bool closed = false;
      while (i < text.size() && text[i] != '\n') {
        if (text[i] == '\\' && i + 1 < text.size()) {
          raw.push_back(text[i]);
          advance(text[i]);
          raw.push_back(text[i]);
          advance(text[i]);
          continue;
        }
        if (text[i] == '"') {
          raw.push_back('"');
          advance('"');
          closed = true;
          break;
        }
        raw.push_back(text[i]);
        advance(text[i]);
      }
      if (!closed) throw Error("unterminated string literal", loc(tok_line, tok_col));
      tokens.push_back(Token{TokenKind::Literal, raw, tok_line, tok_col});
      continue;
    }
    switch (c) {
      case '{': case '}': case '(': case ')': case ';': case ',': case '.': case '=': case ':':
        tokens.push_back(Token{TokenKind::Punctuation, std::string(1, c), tok_line, tok_col});
        advance(c);
        continue;
      default:
        throw Error("unexpected character '" + std::string(1, c) + "' (outside the supported Java subset)",
                    loc(tok_line, tok_col));
    }
  }
  tokens.push_back(Token{TokenKind::EndOfFile, "", line, column});
  return tokens;
}

}  // namespace statemine::java
