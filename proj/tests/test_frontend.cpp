#include <doctest.h>

#include "statemine/embedded.hpp"
#include "statemine/java_frontend.hpp"

#include "test_support.hpp"

using namespace statemine;
using namespace statemine::java;
using namespace test_support;

namespace {

const Node* find_node(const Model& m, const std::string& kind, const std::string& name = "") {
  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    if (n.kind != kind) continue;
    if (!name.empty()) {
      auto it = n.attrs.find("name");
      if (it == n.attrs.end() || std::get<std::string>(it->second) != name) continue;
    }
    return &n;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("tokenize covers keywords, identifiers, punctuation and positions") {
  auto tokens = tokenize("class A {}");
  REQUIRE(tokens.size() == 5);
  CHECK(tokens[0].kind == TokenKind::Keyword);
  CHECK(tokens[0].text == "class");
  CHECK(tokens[1].kind == TokenKind::Identifier);
  CHECK(tokens[1].text == "A");
  CHECK(tokens[2].text == "{");
  CHECK(tokens[3].text == "}");
  CHECK(tokens[4].kind == TokenKind::EndOfFile);
  CHECK(tokens[0].line == 1);
  CHECK(tokens[0].column == 1);
  CHECK(tokens[1].column == 7);

  auto empty = tokenize("");
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].kind == TokenKind::EndOfFile);

  auto commented = tokenize("// all gone\n/* and this */ class");
  CHECK(commented.size() == 2);
}

TEST_CASE("tokenize failures carry a location") {
  try {
    tokenize("/* x", "F.java");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.diagnostic().location.file == "F.java");
    CHECK(e.diagnostic().location.line == 1);
    CHECK(e.diagnostic().location.column == 1);
    CHECK(std::string(e.what()).find("unterminated comment") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS(tokenize("\"open"), doctest::Contains("unterminated string"), Error);
  CHECK_THROWS_WITH_AS(tokenize("int x = a + b;"), doctest::Contains("unexpected character"), Error);
  CHECK_THROWS_WITH_AS(tokenize("@Override"), doctest::Contains("unexpected character"), Error);
}

TEST_CASE("parse builds the documented shape for a state class") {
  Model m = parse_fixture(
      {{"A.java",
        "class Idle extends State { public void start() { Running.Instance().activate(); } }"}},
      nullptr, /*resolve=*/false);

  const Node* cls = find_node(m, "Class", "Idle");
  REQUIRE(cls != nullptr);
  CHECK_FALSE(std::get<bool>(cls->attrs.at("abstract")));
  CHECK(std::get<std::string>(cls->attrs.at("extendsName")) == "State");

  const Node* method = find_node(m, "ClassMethod", "start");
  REQUIRE(method != nullptr);
  CHECK(std::get<std::string>(method->attrs.at("returnType")) == "void");

  // Reference chain of three nodes: Running -> Instance() -> activate().
  const Node* head = find_node(m, "IdentifierReference", "Running");
  REQUIRE(head != nullptr);
  const Node& instance = m.node(head->refs.at("next").front());
  CHECK(instance.kind == "MethodCall");
  CHECK(std::get<std::string>(instance.attrs.at("name")) == "Instance");
  const Node& activate = m.node(instance.refs.at("next").front());
  CHECK(activate.kind == "MethodCall");
  CHECK(std::get<std::string>(activate.attrs.at("name")) == "activate");
  CHECK(activate.refs.count("next") == 0);
}

TEST_CASE("parse handles abstract classes, switches, and break") {
  Model m = parse_fixture({{"A.java", "abstract class Base extends State {}\n"
                                      "class C { void f(Event ev) {"
                                      " switch (ev) { case STOP: break; default: break; } } }"}},
                          nullptr, /*resolve=*/false);

  const Node* base = find_node(m, "Class", "Base");
  REQUIRE(base != nullptr);
  CHECK(std::get<bool>(base->attrs.at("abstract")));
  CHECK(base->refs.count("members") == 0);

  const Node* sw = find_node(m, "Switch");
  REQUIRE(sw != nullptr);
  REQUIRE(sw->refs.at("cases").size() == 2);
  const Node& nsc = m.node(sw->refs.at("cases")[0]);
  CHECK(nsc.kind == "NormalSwitchCase");
  const Node& label = m.node(nsc.refs.at("condition").front());
  CHECK(label.kind == "IdentifierReference");
  CHECK(std::get<std::string>(label.attrs.at("name")) == "STOP");
  CHECK(nsc.refs.count("statements") == 0);  // break leaves no node
  CHECK(m.node(sw->refs.at("cases")[1]).kind == "DefaultSwitchCase");
}

TEST_CASE("expression statements cover calls, assignments, literals and instantiations") {
  Model m = parse_fixture({{"A.java", "class C { void f() { new Bus(); x = 1; \"s\"; } }"}},
                          nullptr, false);
  std::vector<std::string> kinds;
  for (const auto& id : m.ids())
    if (m.node(id).kind == "ExpressionStatement")
      kinds.push_back(m.node(m.node(id).refs.at("expression").front()).kind);
  CHECK(kinds == std::vector<std::string>{"Instantiation", "Assignment", "Literal"});
}

TEST_CASE("local variable declarations normalize to assignments") {
  Model m = parse_fixture({{"A.java", "class C { void f() { Bus b = new Bus(); } }"}}, nullptr,
                          false);
  const Node* stmt = find_node(m, "ExpressionStatement");
  REQUIRE(stmt != nullptr);
  const Node& assign = m.node(stmt->refs.at("expression").front());
  REQUIRE(assign.kind == "Assignment");
  const Node& lhs = m.node(assign.refs.at("target").front());
  CHECK(lhs.kind == "IdentifierReference");
  CHECK(std::get<std::string>(lhs.attrs.at("name")) == "b");
  const Node& value = m.node(assign.refs.at("value").front());
  CHECK(value.kind == "Instantiation");
  CHECK(std::get<std::string>(value.attrs.at("typeName")) == "Bus");
}

TEST_CASE("syntax errors point at the offending token") {
  std::vector<Diagnostic> diags;
  Model m(combined_metamodel());
  try {
    parse_source("B.java", "class { }", m, {}, diags);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("expected class name") != std::string::npos);
    CHECK(e.diagnostic().location.line == 1);
    CHECK(e.diagnostic().location.column == 7);
  }
}

TEST_CASE("unsupported constructs warn by default and fail under strict") {
  const std::string source = "class C { void f() { while (busy) { poll(); } } }";
  std::vector<Diagnostic> diags;
  Model m = parse_fixture({{"W.java", source}}, &diags, /*resolve=*/false);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].severity == Severity::Warning);
  CHECK(diags[0].message.find("unsupported construct") != std::string::npos);
  CHECK(diags[0].message.find("while") != std::string::npos);
  CHECK(find_node(m, "ClassMethod", "f") != nullptr);  // the method itself survived

  std::vector<Diagnostic> strict_diags;
  CHECK_THROWS_WITH_AS(parse_fixture({{"W.java", source}}, &strict_diags, false, /*strict=*/true),
                       doctest::Contains("unsupported construct"), Error);

  // Skipping consumes the whole construct: the next statement still parses.
  std::vector<Diagnostic> d2;
  Model m2 = parse_fixture(
      {{"W.java", "class C { void f() { for (;;) { spin(); } done = ok; } }"}}, &d2, false);
  CHECK(d2.size() == 1);
  CHECK(find_node(m2, "Assignment") != nullptr);

  std::vector<Diagnostic> d3;
  parse_fixture({{"W.java", "class C { C() { } void f() { } }"}}, &d3, false);
  REQUIRE(d3.size() == 1);
  CHECK(d3[0].message.find("constructor") != std::string::npos);
}

TEST_CASE("every parsed node conforms and carries an origin inside its file") {
  for (const char* dir : {"tests/fixtures/two_state", "tests/fixtures/trigger_catch",
                          "tests/fixtures/trigger_if_fallback", "tests/fixtures/action_qualified"}) {
    CAPTURE(dir);
    Model m = parse_fixture(fixture_sources(dir), nullptr, /*resolve=*/false);
    CHECK(m.check_conformance().empty());
    for (const auto& id : m.ids()) {
      const Node& n = m.node(id);
      REQUIRE_MESSAGE(n.origin.has_value(), "node " << id << " of kind " << n.kind);
      CHECK(n.origin->line >= 1);
      CHECK(n.origin->column >= 1);
      CHECK(n.origin->file.find(".java") != std::string::npos);
      // The origin names the file whose unit contains the node.
      auto chain = m.container_chain(id);
      const Node& unit = chain.empty() ? n : m.node(chain.back().parent);
      CHECK(unit.kind == "CompilationUnit");
      CHECK(std::get<std::string>(unit.attrs.at("name")) == n.origin->file);
    }
  }
}

TEST_CASE("pretty-printing and re-parsing yields a tree-equal model") {
  for (const char* dir :
       {"tests/fixtures/two_state", "tests/fixtures/trigger_catch",
        "tests/fixtures/trigger_switch_case", "tests/fixtures/trigger_if_fallback",
        "tests/fixtures/action_qualified", "tests/fixtures/abstract_subclass"}) {
    CAPTURE(dir);
    Model m = parse_fixture(fixture_sources(dir), nullptr, /*resolve=*/false);
    Model re(java_metamodel());
    std::vector<Diagnostic> diags;
    for (const auto& root : m.roots()) {
      const Node& unit = m.node(root);
      parse_source(std::get<std::string>(unit.attrs.at("name")), write_java(m, root), re, {},
                   diags);
    }
    CHECK(diags.empty());
    CHECK(models_tree_equal(m, re));
  }
}

TEST_CASE("every grammar production survives the print/re-parse round trip") {
  const char* source =
      "enum Event { STOP, GO }\n"
      "abstract class Base extends State { }\n"
      "class C extends Base {\n"
      "  static Bus bus = new Bus(5, \"fast\");\n"
      "  Timer t;\n"
      "  public static void f(Event ev, Timer t2) throws BusError, Timeout {\n"
      "    Port p = new Port();\n"
      "    p = bus;\n"
      "    if (ready)\n"
      "      go();\n"
      "    else {\n"
      "      stop(1, t2.freq());\n"
      "    }\n"
      "    switch (ev) {\n"
      "      case STOP:\n"
      "        break;\n"
      "      case GO:\n"
      "        run(ev);\n"
      "      default:\n"
      "        idle();\n"
      "    }\n"
      "    try {\n"
      "      poll();\n"
      "    } catch (BusError e) {\n"
      "      e.report(\"oops\");\n"
      "    } catch (Timeout e) {\n"
      "      retry();\n"
      "    }\n"
      "    return;\n"
      "  }\n"
      "  Event g() { return Event.STOP; }\n"
      "  void h();\n"
      "}\n";
  Model m = parse_fixture({{"K.java", source}}, nullptr, /*resolve=*/false);
  CHECK(m.check_conformance().empty());

  Model re(java_metamodel());
  std::vector<Diagnostic> diags;
  parse_source("K.java", write_java(m, m.roots().front()), re, {}, diags);
  CHECK(diags.empty());
  CHECK(models_tree_equal(m, re));
}

TEST_CASE("resolve_names binds extends, case labels, fields and parameters") {
  Model m = parse_fixture(fixture_sources("tests/fixtures/two_state"));

  const Node* idle = find_node(m, "Class", "Idle");
  const Node* state = find_node(m, "Class", "State");
  REQUIRE(idle != nullptr);
  REQUIRE(state != nullptr);
  CHECK(m.targets(idle->id, "extends") == std::vector<std::string>{state->id});

  const Node* running = find_node(m, "Class", "Running");
  const Node* head = find_node(m, "IdentifierReference", "Running");
  REQUIRE(head != nullptr);
  CHECK(m.targets(head->id, "target") == std::vector<std::string>{running->id});

  // Case label STOP resolves to the enumeration constant.
  const Node* label = find_node(m, "IdentifierReference", "STOP");
  REQUIRE(label != nullptr);
  const Node& constant = m.node(m.targets(label->id, "target").front());
  CHECK(constant.kind == "EnumConstant");

  // Field and parameter references resolve through the enclosing scope.
  const Node* bus_use = nullptr;
  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    if (n.kind == "IdentifierReference" && n.container && n.container->reference != "next" &&
        std::get<std::string>(n.attrs.at("name")) == "bus" &&
        m.node(n.container->parent).kind == "ExpressionStatement")
      bus_use = &n;
  }
  REQUIRE(bus_use != nullptr);
  CHECK(m.node(m.targets(bus_use->id, "target").front()).kind == "Field");

  const Node* ev_use = find_node(m, "IdentifierReference", "ev");
  REQUIRE(ev_use != nullptr);
  CHECK(m.node(m.targets(ev_use->id, "target").front()).kind == "Parameter");
}

TEST_CASE("ambiguous names resolve to the first declaration with a warning") {
  std::vector<Diagnostic> diags;
  Model m = parse_fixture({{"A.java", "enum E1 { STOP }\nenum E2 { STOP }\n"
                                      "class C { void f(Event ev) { switch (ev) { case STOP: break; } } }"}},
                          &diags);
  const Node* label = find_node(m, "IdentifierReference", "STOP");
  REQUIRE(label != nullptr);
  auto target = m.targets(label->id, "target");
  REQUIRE(target.size() == 1);
  // First declaration in document order wins: E1's constant.
  const Node& e1 = *find_node(m, "Enumeration", "E1");
  CHECK(target.front() == e1.refs.at("constants").front());
  bool warned = false;
  for (const auto& d : diags)
    if (d.message.find("ambiguous") != std::string::npos) warned = true;
  CHECK(warned);
}

TEST_CASE("catch parameters resolve like any other local") {
  std::vector<Diagnostic> diags;
  Model m = parse_fixture({{"A.java", "class C {\n"
                                      "  void f() {\n"
                                      "    try { poll(); } catch (BusError e) { e.report(); }\n"
                                      "  } }"}},
                          &diags);
  CHECK(diags.empty());
  const Node* use = find_node(m, "IdentifierReference", "e");
  REQUIRE(use != nullptr);
  const Node& target = m.node(m.targets(use->id, "target").front());
  CHECK(target.kind == "Parameter");
  CHECK(std::get<std::string>(target.attrs.at("typeName")) == "BusError");
}

TEST_CASE("enumeration constants shadow classes of the same name in the search order") {
  Model m = parse_fixture({{"A.java", "enum Mode { Special }\nclass Special { }\n"
                                      "class C { void f() { Special.ping(); } }"}});
  const Node* use = find_node(m, "IdentifierReference", "Special");
  REQUIRE(use != nullptr);
  const Node& target = m.node(m.targets(use->id, "target").front());
  CHECK(target.kind == "EnumConstant");
}

TEST_CASE("unresolved names produce warnings and leave the target empty") {
  std::vector<Diagnostic> diags;
  Model m = parse_fixture({{"A.java", "class C { void f() { ghost.run(); } }"}}, &diags);
  const Node* ghost = find_node(m, "IdentifierReference", "ghost");
  REQUIRE(ghost != nullptr);
  CHECK(m.targets(ghost->id, "target").empty());
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message == "unresolved name 'ghost'");
  CHECK(diags[0].location.line == 1);
}
