#include "statemine/java_frontend.hpp"

#include <algorithm>
#include <set>

namespace statemine::java {

namespace {

const std::set<std::string> kUnsupportedWords = {
    "for",        "while",     "do",      "throw",    "synchronized", "assert",
    "continue",   "finally",   "this",    "super",    "import",       "package",
    "interface",  "implements", "final",  "instanceof", "goto",       "const",
    "volatile",   "transient", "native",  "strictfp"};

struct Modifiers {
  bool is_static = false;
  bool is_abstract = false;
};

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, Model& m, std::string path, const ParseOptions& opts,
         std::vector<Diagnostic>& diags)
      : tokens_(tokens), m_(m), path_(std::move(path)), opts_(opts), diags_(diags) {}

  std::string parse_unit() {
    std::string unit = m_.add_node("CompilationUnit", {{"name", path_}}, loc(peek()));
    while (!at_eof()) {
      Modifiers mods = parse_modifiers();
      if (at_keyword("class")) {
        parse_class(unit, mods);
      } else if (at_keyword("enum")) {
        parse_enum(unit);
      } else {
        report_unsupported("top-level construct starting with '" + peek().text + "'", peek());
        skip_unsupported();
      }
    }
    return unit;
  }

 private:
  // --- token plumbing ------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& advance() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
  bool at_eof() const { return peek().kind == TokenKind::EndOfFile; }
  bool at_punct(const char* p) const {
    return peek().kind == TokenKind::Punctuation && peek().text == p;
  }
  bool at_keyword(const char* k) const {
    return peek().kind == TokenKind::Keyword && peek().text == k;
  }
  bool accept_punct(const char* p) {
    if (!at_punct(p)) return false;
    advance();
    return true;
  }
  bool accept_keyword(const char* k) {
    if (!at_keyword(k)) return false;
    advance();
    return true;
  }
  SourceLocation loc(const Token& t) const { return SourceLocation{path_, t.line, t.column}; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.kind == TokenKind::EndOfFile ? "end of file" : "'" + t.text + "'";
    throw Error("expected " + expected + ", got " + got, loc(t));
  }

  const Token& expect_punct(const char* p) {
    if (!at_punct(p)) fail("'" + std::string(p) + "'");
    return advance();
  }
  const Token& expect_identifier(const char* what) {
    if (peek().kind != TokenKind::Identifier) fail(what);
    return advance();
  }

  void report_unsupported(const std::string& what, const Token& t) {
    Diagnostic d = warning("unsupported construct: " + what, loc(t));
    if (opts_.strict) throw Error(Diagnostic{Severity::Error, d.message, d.location});
    diags_.push_back(std::move(d));
  }

  // Consumes a balanced stretch up to and including a top-level ';' or a
  // complete top-level '{...}'. Stops (without consuming) at a closing token
  // of the enclosing construct.
  void skip_unsupported() {
    int depth = 0;
    while (!at_eof()) {
      const Token& t = peek();
      if (t.kind == TokenKind::Punctuation) {
        if (t.text == "(" || t.text == "{") {
          ++depth;
        } else if (t.text == ")" || t.text == "}") {
          if (depth == 0) return;
          --depth;
          advance();
          if (depth == 0 && t.text == "}") return;
          continue;
        } else if (t.text == ";" && depth == 0) {
          advance();
          return;
        }
      }
      advance();
    }
  }

  // --- declarations --------------------------------------------------------

  Modifiers parse_modifiers() {
    Modifiers mods;
    for (;;) {
      if (at_keyword("public") || at_keyword("private") || at_keyword("protected")) {
        advance();
      } else if (at_keyword("static")) {
        mods.is_static = true;
        advance();
      } else if (at_keyword("abstract")) {
        mods.is_abstract = true;
        advance();
      } else {
        return mods;
      }
    }
  }

  void parse_class(const std::string& unit, const Modifiers& mods) {
    const Token& kw = advance();  // class
    const Token& name = expect_identifier("class name");
    std::string extends_name;
    if (accept_keyword("extends")) extends_name = expect_identifier("superclass name").text;

    std::string cls = m_.add_node(
        "Class",
        {{"name", name.text}, {"abstract", mods.is_abstract}, {"extendsName", extends_name}},
        loc(kw));
    m_.set_container(cls, unit, "classifiers");

    expect_punct("{");
    while (!at_punct("}") && !at_eof()) parse_member(cls);
    expect_punct("}");
  }

  void parse_enum(const std::string& unit) {
    const Token& kw = advance();  // enum
    const Token& name = expect_identifier("enumeration name");
    std::string en = m_.add_node("Enumeration", {{"name", name.text}}, loc(kw));
    m_.set_container(en, unit, "classifiers");

    expect_punct("{");
    for (;;) {
      const Token& c = expect_identifier("enum constant name");
      std::string ec = m_.add_node("EnumConstant", {{"name", c.text}}, loc(c));
      m_.set_container(ec, en, "constants");
      if (!accept_punct(",")) break;
    }
    accept_punct(";");
    expect_punct("}");
  }

  void parse_member(const std::string& cls) {
    const Token& start = peek();
    Modifiers mods = parse_modifiers();

    if (at_keyword("class") || at_keyword("enum")) {
      report_unsupported("nested type declaration", peek());
      skip_unsupported();
      return;
    }

    std::string type_name;
    if (accept_keyword("void")) {
      type_name = "void";
    } else if (peek().kind == TokenKind::Identifier) {
      type_name = advance().text;
    } else {
      report_unsupported("class member starting with '" + peek().text + "'", start);
      skip_unsupported();
      return;
    }

    if (peek().kind != TokenKind::Identifier) {
      // Constructors (`Name(...)`) and initializer blocks land here.
      report_unsupported("class member without a member name (constructor or initializer?)", start);
      skip_unsupported();
      return;
    }
    const Token& name = advance();

    if (at_punct("(")) {
      parse_method(cls, start, mods, type_name, name);
    } else {
      parse_field(cls, start, mods, type_name, name);
    }
  }

  void parse_method(const std::string& cls, const Token& start, const Modifiers& mods,
                    const std::string& return_type, const Token& name) {
    std::string method = m_.add_node("ClassMethod",
                                     {{"name", name.text},
                                      {"static", mods.is_static},
                                      {"returnType", return_type},
                                      {"exceptions", std::string()}},
                                     loc(start));
    m_.set_container(method, cls, "members");

    expect_punct("(");
    if (!at_punct(")")) {
      for (;;) {
        const Token& ptype = expect_identifier("parameter type");
        const Token& pname = expect_identifier("parameter name");
        std::string param =
            m_.add_node("Parameter", {{"name", pname.text}, {"typeName", ptype.text}}, loc(ptype));
        m_.set_container(param, method, "parameters");
        if (!accept_punct(",")) break;
      }
    }
    expect_punct(")");

    if (accept_keyword("throws")) {
      std::string exceptions = expect_identifier("exception type").text;
      while (accept_punct(",") || peek().kind == TokenKind::Identifier)
        exceptions += ", " + expect_identifier("exception type").text;
      m_.set_attr(method, "exceptions", exceptions);
    }

    if (accept_punct(";")) return;  // abstract/bodyless method
    std::string body = parse_block();
    m_.set_container(body, method, "body");
  }

  void parse_field(const std::string& cls, const Token& start, const Modifiers& mods,
                   const std::string& type_name, const Token& name) {
    std::string field = m_.add_node(
        "Field", {{"name", name.text}, {"static", mods.is_static}, {"typeName", type_name}},
        loc(start));
    m_.set_container(field, cls, "members");
    if (accept_punct("=")) {
      std::string value = parse_expression();
      m_.set_container(value, field, "initialValue");
    }
    expect_punct(";");
  }

  // --- statements ----------------------------------------------------------

  std::string parse_block() {
    const Token& open = expect_punct("{");
    std::string block = m_.add_node("Block", {}, loc(open));
    parse_statements_into(block, "statements");
    expect_punct("}");
    return block;
  }

  // Parses statements until '}' (not consumed), 'case' or 'default'.
  void parse_statements_into(const std::string& parent, const std::string& slot) {
    while (!at_eof() && !at_punct("}") && !at_keyword("case") && !at_keyword("default")) {
      auto stmt = parse_statement();
      if (stmt) m_.set_container(*stmt, parent, slot);
    }
  }

  std::optional<std::string> parse_statement() {
    const Token& t = peek();
    if (at_punct("{")) return parse_block();
    if (at_keyword("if")) return parse_if();
    if (at_keyword("switch")) return parse_switch();
    if (at_keyword("try")) return parse_try();
    if (at_keyword("return")) return parse_return();
    if (at_keyword("break")) {
      // Flow-control noise inside switch cases; carries nothing the syntax
      // graph needs, so it leaves no node.
      advance();
      expect_punct(";");
      return std::nullopt;
    }
    if (accept_punct(";")) return std::nullopt;  // empty statement

    if (t.kind == TokenKind::Identifier && kUnsupportedWords.count(t.text)) {
      report_unsupported("statement starting with '" + t.text + "'", t);
      skip_unsupported();
      return std::nullopt;
    }
    if (t.kind == TokenKind::Keyword && !at_keyword("new")) {
      report_unsupported("statement starting with '" + t.text + "'", t);
      skip_unsupported();
      return std::nullopt;
    }

    // `Type name = expr;` declares a local; the declared type has no kind in
    // the syntax graph, so it normalizes to a plain assignment.
    if (t.kind == TokenKind::Identifier && peek(1).kind == TokenKind::Identifier) {
      advance();  // type
      const Token& name = advance();
      if (!at_punct("=")) {
        report_unsupported("local variable declaration without initializer", t);
        skip_unsupported();
        return std::nullopt;
      }
      advance();  // =
      std::string stmt = m_.add_node("ExpressionStatement", {}, loc(t));
      std::string assign = m_.add_node("Assignment", {}, loc(name));
      std::string lhs = m_.add_node("IdentifierReference", {{"name", name.text}}, loc(name));
      std::string value = parse_expression();
      m_.set_container(lhs, assign, "target");
      m_.set_container(value, assign, "value");
      m_.set_container(assign, stmt, "expression");
      expect_punct(";");
      return stmt;
    }

    std::string stmt = m_.add_node("ExpressionStatement", {}, loc(t));
    std::string expr = parse_expression();
    m_.set_container(expr, stmt, "expression");
    expect_punct(";");
    return stmt;
  }

  std::string parse_if() {
    const Token& kw = advance();  // if
    std::string cond = m_.add_node("Condition", {}, loc(kw));
    expect_punct("(");
    std::string expr = parse_expression();
    m_.set_container(expr, cond, "condition");
    expect_punct(")");
    if (auto then_stmt = parse_statement()) m_.set_container(*then_stmt, cond, "statement");
    if (accept_keyword("else")) {
      if (auto else_stmt = parse_statement()) m_.set_container(*else_stmt, cond, "elseStatement");
    }
    return cond;
  }

  std::string parse_switch() {
    const Token& kw = advance();  // switch
    std::string sw = m_.add_node("Switch", {}, loc(kw));
    expect_punct("(");
    std::string selector = parse_expression();
    m_.set_container(selector, sw, "variable");
    expect_punct(")");
    expect_punct("{");
    while (!at_punct("}") && !at_eof()) {
      if (at_keyword("case")) {
        const Token& ckw = advance();
        const Token& label = expect_identifier("case label");
        expect_punct(":");
        std::string nsc = m_.add_node("NormalSwitchCase", {}, loc(ckw));
        m_.set_container(nsc, sw, "cases");
        std::string label_ref =
            m_.add_node("IdentifierReference", {{"name", label.text}}, loc(label));
        m_.set_container(label_ref, nsc, "condition");
        parse_statements_into(nsc, "statements");
      } else if (at_keyword("default")) {
        const Token& dkw = advance();
        expect_punct(":");
        std::string dsc = m_.add_node("DefaultSwitchCase", {}, loc(dkw));
        m_.set_container(dsc, sw, "cases");
        parse_statements_into(dsc, "statements");
      } else {
        fail("'case', 'default' or '}'");
      }
    }
    expect_punct("}");
    return sw;
  }

  std::string parse_try() {
    const Token& kw = advance();  // try
    std::string try_block = m_.add_node("TryBlock", {}, loc(kw));
    std::string body = parse_block();
    m_.set_container(body, try_block, "block");

    if (!at_keyword("catch")) fail("'catch'");
    while (at_keyword("catch")) {
      const Token& ckw = advance();
      expect_punct("(");
      const Token& type = expect_identifier("exception type");
      const Token& name = expect_identifier("exception variable name");
      expect_punct(")");
      std::string catch_block = m_.add_node("CatchBlock", {}, loc(ckw));
      m_.set_container(catch_block, try_block, "catchBlocks");
      std::string param =
          m_.add_node("Parameter", {{"name", name.text}, {"typeName", type.text}}, loc(type));
      m_.set_container(param, catch_block, "parameter");
      std::string handler = parse_block();
      m_.set_container(handler, catch_block, "block");
    }
    return try_block;
  }

  std::string parse_return() {
    const Token& kw = advance();  // return
    std::string ret = m_.add_node("Return", {}, loc(kw));
    if (!at_punct(";")) {
      std::string value = parse_expression();
      m_.set_container(value, ret, "returnValue");
    }
    expect_punct(";");
    return ret;
  }

  // --- expressions ---------------------------------------------------------

  std::string parse_expression() {
    std::string lhs = parse_primary();
    if (at_punct("=")) {
      const Token& eq = advance();
      if (!kind_conforms(m_.metamodel(), m_.node(lhs).kind, "ElementReference"))
        throw Error("left side of an assignment must be a reference", loc(eq));
      std::string assign = m_.add_node("Assignment", {}, loc(eq));
      std::string value = parse_expression();
      m_.set_container(lhs, assign, "target");
      m_.set_container(value, assign, "value");
      return assign;
    }
    return lhs;
  }

  std::string parse_primary() {
    const Token& t = peek();
    if (t.kind == TokenKind::Literal) {
      advance();
      return m_.add_node("Literal", {{"value", t.text}}, loc(t));
    }
    if (at_keyword("new")) {
      advance();
      const Token& type = expect_identifier("type name after 'new'");
      std::string inst = m_.add_node("Instantiation", {{"typeName", type.text}}, loc(t));
      expect_punct("(");
      parse_arguments_into(inst);
      expect_punct(")");
      return inst;
    }
    if (t.kind == TokenKind::Identifier) return parse_reference_chain();
    fail("an expression");
  }

  std::string parse_reference_chain() {
    std::string head = parse_reference_segment();
    std::string prev = head;
    while (accept_punct(".")) {
      std::string next = parse_reference_segment();
      m_.set_container(next, prev, "next");
      prev = next;
    }
    return head;
  }

  std::string parse_reference_segment() {
    const Token& name = expect_identifier("a name");
    if (at_punct("(")) {
      std::string call = m_.add_node("MethodCall", {{"name", name.text}}, loc(name));
      expect_punct("(");
      parse_arguments_into(call);
      expect_punct(")");
      return call;
    }
    return m_.add_node("IdentifierReference", {{"name", name.text}}, loc(name));
  }

  void parse_arguments_into(const std::string& call) {
    if (at_punct(")")) return;
    for (;;) {
      std::string arg = parse_expression();
      m_.set_container(arg, call, "arguments");
      if (!accept_punct(",")) break;
    }
  }

  const std::vector<Token>& tokens_;
  Model& m_;
  std::string path_;
  ParseOptions opts_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string parse_unit(const std::vector<Token>& tokens, Model& m, const std::string& path,
                       const ParseOptions& opts, std::vector<Diagnostic>& diags) {
  if (tokens.empty()) throw Error("empty token stream (missing end-of-file token)");
  Parser parser(tokens, m, path, opts, diags);
  return parser.parse_unit();
}

std::string parse_source(const std::string& path, const std::string& text, Model& m,
                         const ParseOptions& opts, std::vector<Diagnostic>& diags) {
  return parse_unit(tokenize(text, path), m, path, opts, diags);
}

void parse_program(std::vector<ProgramSource> sources, Model& m, const ParseOptions& opts,
                   std::vector<Diagnostic>& diags) {
  std::sort(sources.begin(), sources.end(),
            [](const ProgramSource& a, const ProgramSource& b) { return a.path < b.path; });
  for (const auto& src : sources) parse_source(src.path, src.text, m, opts, diags);
}

}  // namespace statemine::java
