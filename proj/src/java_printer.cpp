#include "statemine/java_frontend.hpp"

#include <sstream>

namespace statemine::java {

namespace {

std::string attr_text(const Node& n, const std::string& name) {
  auto it = n.attrs.find(name);
  if (it == n.attrs.end() || !std::holds_alternative<std::string>(it->second)) return {};
  return std::get<std::string>(it->second);
}

bool attr_flag(const Node& n, const std::string& name) {
  auto it = n.attrs.find(name);
  return it != n.attrs.end() && std::holds_alternative<bool>(it->second) &&
         std::get<bool>(it->second);
}

class Printer {
 public:
  explicit Printer(const Model& m) : m_(m) {}

  std::string unit(const std::string& unit_id) {
    const Node& u = m_.node(unit_id);
    auto it = u.refs.find("classifiers");
    if (it != u.refs.end()) {
      bool first = true;
      for (const auto& cid : it->second) {
        if (!first) os_ << "\n";
        first = false;
        classifier(m_.node(cid));
      }
    }
    return os_.str();
  }

 private:
  const std::vector<std::string>& slot(const Node& n, const char* name) const {
    static const std::vector<std::string> empty;
    auto it = n.refs.find(name);
    return it == n.refs.end() ? empty : it->second;
  }

  void indent() { os_ << std::string(2 * static_cast<std::size_t>(level_), ' '); }

  void classifier(const Node& n) {
    if (n.kind == "Enumeration") {
      os_ << "enum " << attr_text(n, "name") << " {";
      bool first = true;
      for (const auto& cid : slot(n, "constants")) {
        os_ << (first ? " " : ", ") << attr_text(m_.node(cid), "name");
        first = false;
      }
      os_ << " }\n";
      return;
    }
    if (attr_flag(n, "abstract")) os_ << "abstract ";
    os_ << "class " << attr_text(n, "name");
    if (!attr_text(n, "extendsName").empty()) os_ << " extends " << attr_text(n, "extendsName");
    os_ << " {\n";
    ++level_;
    for (const auto& mid : slot(n, "members")) member(m_.node(mid));
    --level_;
    os_ << "}\n";
  }

  void member(const Node& n) {
    indent();
    if (n.kind == "Field") {
      if (attr_flag(n, "static")) os_ << "static ";
      os_ << attr_text(n, "typeName") << " " << attr_text(n, "name");
      const auto& init = slot(n, "initialValue");
      if (!init.empty()) {
        os_ << " = ";
        expression(m_.node(init.front()));
      }
      os_ << ";\n";
      return;
    }
    if (attr_flag(n, "static")) os_ << "static ";
    os_ << attr_text(n, "returnType") << " " << attr_text(n, "name") << "(";
    bool first = true;
    for (const auto& pid : slot(n, "parameters")) {
      if (!first) os_ << ", ";
      first = false;
      const Node& p = m_.node(pid);
      os_ << attr_text(p, "typeName") << " " << attr_text(p, "name");
    }
    os_ << ")";
    if (!attr_text(n, "exceptions").empty()) os_ << " throws " << attr_text(n, "exceptions");
    const auto& body = slot(n, "body");
    if (body.empty()) {
      os_ << ";\n";
    } else {
      os_ << " ";
      block_inline(m_.node(body.front()));
    }
  }

  void block_inline(const Node& block) {
    os_ << "{\n";
    ++level_;
    for (const auto& sid : slot(block, "statements")) statement(m_.node(sid));
    --level_;
    indent();
    os_ << "}\n";
  }

  void statement(const Node& n) {
    if (n.kind == "Block") {
      indent();
      block_inline(n);
      return;
    }
    if (n.kind == "Condition") {
      indent();
      os_ << "if (";
      expression(m_.node(slot(n, "condition").front()));
      os_ << ")\n";
      ++level_;
      if (!slot(n, "statement").empty()) {
        statement(m_.node(slot(n, "statement").front()));
      } else {
        indent();
        os_ << ";\n";
      }
      --level_;
      if (!slot(n, "elseStatement").empty()) {
        indent();
        os_ << "else\n";
        ++level_;
        statement(m_.node(slot(n, "elseStatement").front()));
        --level_;
      }
      return;
    }
    if (n.kind == "Switch") {
      indent();
      os_ << "switch (";
      expression(m_.node(slot(n, "variable").front()));
      os_ << ") {\n";
      ++level_;
      for (const auto& cid : slot(n, "cases")) {
        const Node& c = m_.node(cid);
        indent();
        if (c.kind == "NormalSwitchCase") {
          os_ << "case ";
          expression(m_.node(slot(c, "condition").front()));
          os_ << ":\n";
        } else {
          os_ << "default:\n";
        }
        ++level_;
        for (const auto& sid : slot(c, "statements")) statement(m_.node(sid));
        --level_;
      }
      --level_;
      indent();
      os_ << "}\n";
      return;
    }
    if (n.kind == "TryBlock") {
      indent();
      os_ << "try ";
      block_inline(m_.node(slot(n, "block").front()));
      for (const auto& cid : slot(n, "catchBlocks")) {
        const Node& c = m_.node(cid);
        indent();
        os_ << "catch (";
        const Node& p = m_.node(slot(c, "parameter").front());
        os_ << attr_text(p, "typeName") << " " << attr_text(p, "name") << ") ";
        block_inline(m_.node(slot(c, "block").front()));
      }
      return;
    }
    if (n.kind == "Return") {
      indent();
      os_ << "return";
      if (!slot(n, "returnValue").empty()) {
        os_ << " ";
        expression(m_.node(slot(n, "returnValue").front()));
      }
      os_ << ";\n";
      return;
    }
    if (n.kind == "ExpressionStatement") {
      indent();
      expression(m_.node(slot(n, "expression").front()));
      os_ << ";\n";
      return;
    }
    indent();
    os_ << "/* unprintable " << n.kind << " */;\n";
  }

  void expression(const Node& n) {
    if (n.kind == "Literal") {
      os_ << attr_text(n, "value");
      return;
    }
    if (n.kind == "Instantiation") {
      os_ << "new " << attr_text(n, "typeName") << "(";
      arguments(n);
      os_ << ")";
      return;
    }
    if (n.kind == "Assignment") {
      expression(m_.node(slot(n, "target").front()));
      os_ << " = ";
      expression(m_.node(slot(n, "value").front()));
      return;
    }
    if (n.kind == "IdentifierReference" || n.kind == "MethodCall") {
      os_ << attr_text(n, "name");
      if (n.kind == "MethodCall") {
        os_ << "(";
        arguments(n);
        os_ << ")";
      }
      const auto& next = slot(n, "next");
      if (!next.empty()) {
        os_ << ".";
        expression(m_.node(next.front()));
      }
      return;
    }
    os_ << "/* unprintable " << n.kind << " */";
  }

  void arguments(const Node& call) {
    bool first = true;
    for (const auto& aid : slot(call, "arguments")) {
      if (!first) os_ << ", ";
      first = false;
      expression(m_.node(aid));
    }
  }

  const Model& m_;
  std::ostringstream os_;
  int level_ = 0;
};

}  // namespace

std::string write_java(const Model& m, const std::string& unit_id) {
  return Printer(m).unit(unit_id);
}

}  // namespace statemine::java
