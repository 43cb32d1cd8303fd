#include <doctest.h>

#include "statemine/embedded.hpp"
#include "statemine/java_frontend.hpp"
#include "statemine/model.hpp"

#include "test_support.hpp"

using namespace statemine;
using namespace test_support;

TEST_CASE("add_node creates fresh roots and validates kind and attributes") {
  Model m(java_metamodel());
  std::string a = m.add_node("Class", {{"name", std::string("Idle")}, {"abstract", false}});
  std::string b = m.add_node("Class", {{"name", std::string("Running")}});
  CHECK(a != b);
  CHECK(m.roots() == std::vector<std::string>{a, b});

  CHECK_THROWS_WITH_AS(m.add_node("Statement"), doctest::Contains("abstract"), Error);
  CHECK_THROWS_WITH_AS(m.add_node("NoSuchKind"), doctest::Contains("undeclared"), Error);
  CHECK_THROWS_AS(m.add_node("Class", {{"nope", std::string("x")}}), Error);
  CHECK_THROWS_AS(m.add_node("Class", {{"abstract", std::string("not-a-bool")}}), Error);
}

TEST_CASE("set_container enforces containment, occupancy, cycles and detach-first") {
  Model m(java_metamodel());
  std::string method = m.add_node("ClassMethod", {{"name", std::string("run")}});
  std::string body = m.add_node("Block");
  std::string stmt = m.add_node("ExpressionStatement");

  m.set_container(body, method, "body");
  m.set_container(stmt, body, "statements");
  CHECK(m.container_chain(stmt) ==
        std::vector<ContainerEdge>{{body, "statements"}, {method, "body"}});

  SUBCASE("child kind must conform to the slot target") {
    std::string cls = m.add_node("Class", {{"name", std::string("X")}});
    CHECK_THROWS_WITH_AS(m.set_container(cls, body, "statements"),
                         doctest::Contains("does not conform"), Error);
  }

  SUBCASE("single-valued occupancy") {
    std::string body2 = m.add_node("Block");
    CHECK_THROWS_WITH_AS(m.set_container(body2, method, "body"),
                         doctest::Contains("already occupied"), Error);
  }

  SUBCASE("non-containment reference rejected") {
    std::string idref = m.add_node("IdentifierReference", {{"name", std::string("x")}});
    std::string cls = m.add_node("Class", {{"name", std::string("X")}});
    CHECK_THROWS_WITH_AS(m.set_container(cls, idref, "target"),
                         doctest::Contains("not a containment"), Error);
  }

  SUBCASE("re-parenting requires detach") {
    std::string block2 = m.add_node("Block");
    CHECK_THROWS_WITH_AS(m.set_container(stmt, block2, "statements"),
                         doctest::Contains("already contained"), Error);
    m.detach(stmt);
    m.set_container(stmt, block2, "statements");
    CHECK(m.container_chain(stmt).front().parent == block2);
  }
}

TEST_CASE("containment cycles are detected") {
  Model m(java_metamodel());
  std::string outer = m.add_node("Block");
  std::string stmt = m.add_node("ExpressionStatement");
  // Blocks nest through statements; a block cannot end up inside itself.
  std::string inner = m.add_node("Block");
  m.set_container(inner, outer, "statements");
  m.set_container(stmt, inner, "statements");
  CHECK_THROWS_WITH_AS(m.set_container(outer, inner, "statements"), doctest::Contains("cycle"),
                       Error);
  CHECK_THROWS_AS(m.set_container(outer, outer, "statements"), Error);
}

TEST_CASE("add_reference stores cross references and synthetic opposites navigate back") {
  Model m(java_metamodel());
  std::string idref = m.add_node("IdentifierReference", {{"name", std::string("Running")}});
  std::string cls = m.add_node("Class", {{"name", std::string("Running")}});
  m.add_reference(idref, "target", cls);
  CHECK(m.targets(idref, "target") == std::vector<std::string>{cls});
  // Navigable both ways through the computed synthetic opposite.
  CHECK(m.targets(cls, "ElementReference_target_opposite") == std::vector<std::string>{idref});

  SUBCASE("arity violation on single-valued cross reference") {
    std::string other = m.add_node("Class", {{"name", std::string("Idle")}});
    CHECK_THROWS_WITH_AS(m.add_reference(idref, "target", other),
                         doctest::Contains("already occupied"), Error);
  }

  SUBCASE("containment opposite resolves to the container") {
    std::string method = m.add_node("ClassMethod", {{"name", std::string("go")}});
    m.set_container(method, cls, "members");
    CHECK(m.targets(method, "Class_members_opposite") == std::vector<std::string>{cls});
    std::string unrooted = m.add_node("ClassMethod", {{"name", std::string("free")}});
    CHECK(m.targets(unrooted, "Class_members_opposite").empty());
  }

  SUBCASE("synthetic slots cannot be written") {
    CHECK_THROWS_WITH_AS(m.add_reference(cls, "ElementReference_target_opposite", idref),
                         doctest::Contains("synthetic"), Error);
  }
}

TEST_CASE("declared trace opposites work on the combined metamodel") {
  Model m(combined_metamodel());
  std::string cls = m.add_node("Class", {{"name", std::string("Idle")}});
  std::string state = m.add_node("State", {{"name", std::string("Idle")}});
  m.add_reference(cls, "state", state);
  m.add_reference(state, "javaClass", cls);
  CHECK(m.targets(cls, "state") == std::vector<std::string>{state});
  CHECK(m.targets(state, "javaClass") == std::vector<std::string>{cls});
}

TEST_CASE("container_chain of an activation call climbs case, switch, block, method, class, unit") {
  Model m = parse_fixture(fixture_sources("tests/fixtures/two_state"));
  std::string activate;
  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    if (n.kind == "MethodCall" && n.attrs.count("name") &&
        std::get<std::string>(n.attrs.at("name")) == "activate" && n.container &&
        n.container->reference == "next") {
      // The one inside the switch case belongs to Running.run.
      if (m.container_chain(id).size() > 7) activate = id;
    }
  }
  REQUIRE_FALSE(activate.empty());
  std::vector<std::string> kinds;
  for (const auto& edge : m.container_chain(activate)) kinds.push_back(m.node(edge.parent).kind);
  CHECK(kinds == std::vector<std::string>{"MethodCall", "IdentifierReference",
                                          "ExpressionStatement", "NormalSwitchCase", "Switch",
                                          "Block", "ClassMethod", "Class", "CompilationUnit"});
  CHECK(m.container_chain(m.roots().front()).empty());
}

TEST_CASE("check_conformance accepts parsed fixtures and flags constructed damage") {
  Model m = parse_fixture(fixture_sources("tests/fixtures/two_state"));
  CHECK(m.check_conformance().empty());

  SUBCASE("undeclared reference slot") {
    Model damaged = load_model(R"({"metamodel": "java_subset", "nodes": [
      {"id": "n1", "kind": "Block", "attrs": {}, "container": null, "refs": {"bogus": []}},
      {"id": "n2", "kind": "Block", "attrs": {}, "container": null, "refs": {"bogus": ["n1"]}}
    ]})",
                                java_metamodel());
    auto diags = damaged.check_conformance();
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message.find("undeclared reference slot 'bogus'") != std::string::npos);
  }

  SUBCASE("dangling target") {
    Model damaged = load_model(R"({"metamodel": "java_subset", "nodes": [
      {"id": "n1", "kind": "IdentifierReference", "attrs": {"name": "x"}, "container": null,
       "refs": {"target": ["ghost"]}}
    ]})",
                               java_metamodel());
    auto diags = damaged.check_conformance();
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message.find("missing node 'ghost'") != std::string::npos);
  }
}

TEST_CASE("save/load round-trips fixtures byte- and structure-exactly") {
  for (const char* dir : {"tests/fixtures/two_state", "tests/fixtures/trigger_catch",
                          "tests/fixtures/action_qualified"}) {
    CAPTURE(dir);
    Model m = parse_fixture(fixture_sources(dir));
    std::string text = save_model(m);
    Model re = load_model(text, m.metamodel_ptr());
    CHECK(models_equal(m, re));
    CHECK(save_model(re) == text);
  }
}

TEST_CASE("model JSON has the documented shape, byte for byte") {
  Model m(java_metamodel());
  std::string cls = m.add_node("Class", {{"name", std::string("Idle")}, {"abstract", false}});
  std::string method = m.add_node("ClassMethod", {{"name", std::string("go")}});
  m.set_container(method, cls, "members");
  CHECK(save_model(m) == R"({
  "metamodel": "java_subset",
  "nodes": [
    {
      "id": "n1",
      "kind": "Class",
      "attrs": {
        "name": "Idle",
        "abstract": false
      },
      "container": null,
      "refs": {
        "members": [
          "n2"
        ]
      }
    },
    {
      "id": "n2",
      "kind": "ClassMethod",
      "attrs": {
        "name": "go"
      },
      "container": [
        "n1",
        "members"
      ],
      "refs": {}
    }
  ]
}
)");
}

TEST_CASE("model JSON corner cases") {
  SUBCASE("empty model") {
    Model empty(java_metamodel());
    std::string text = save_model(empty);
    CHECK(text.find("\"nodes\": []") != std::string::npos);
    Model re = load_model(R"({"nodes": []})", java_metamodel());
    CHECK(re.size() == 0);
  }
  SUBCASE("missing kind is an error") {
    CHECK_THROWS_WITH_AS(
        load_model(R"({"nodes": [{"id": "n1", "kind": "Ghost"}]})", java_metamodel()),
        doctest::Contains("missing kind"), Error);
  }
  SUBCASE("synthetic opposite slots are dropped on load") {
    Model re = load_model(R"({"metamodel": "java_subset", "nodes": [
      {"id": "c1", "kind": "Class", "attrs": {"name": "A"}, "container": null,
       "refs": {"members": ["m1"]}},
      {"id": "m1", "kind": "ClassMethod", "attrs": {"name": "f"}, "container": ["c1", "members"],
       "refs": {"Class_members_opposite": ["c1"]}}
    ]})",
                          java_metamodel());
    CHECK(re.check_conformance().empty());
    CHECK(re.node("m1").refs.count("Class_members_opposite") == 0);
    // Recomputed, not stored.
    CHECK(re.targets("m1", "Class_members_opposite") == std::vector<std::string>{"c1"});
  }
  SUBCASE("ids loaded from text keep later generated ids fresh") {
    Model re = load_model(R"({"nodes": [{"id": "n7", "kind": "Block"}]})", java_metamodel());
    CHECK(re.add_node("Block") == "n8");
  }
  SUBCASE("cyclic containment in loaded text is caught, not looped on") {
    Model cyclic = load_model(R"({"nodes": [
      {"id": "a", "kind": "Block", "container": ["b", "statements"], "refs": {"statements": ["b"]}},
      {"id": "b", "kind": "Block", "container": ["a", "statements"], "refs": {"statements": ["a"]}}
    ]})",
                              java_metamodel());
    bool flagged = false;
    for (const auto& d : cyclic.check_conformance())
      if (d.message.find("cycle") != std::string::npos) flagged = true;
    CHECK(flagged);
    CHECK_THROWS_WITH_AS(cyclic.container_chain("a"), doctest::Contains("cycle"), Error);
  }
}

TEST_CASE("strip_to_metamodel keeps declared content only") {
  Model m = parse_fixture(fixture_sources("tests/fixtures/two_state"));

  SUBCASE("strip to the same metamodel keeps everything") {
    Model same = strip_to_metamodel(m, m.metamodel_ptr());
    CHECK(models_equal(m, same));
  }
  SUBCASE("strip to the state-machine metamodel drops all Java nodes") {
    Model stripped = strip_to_metamodel(m, statemachine_metamodel());
    CHECK(stripped.size() == 0);
  }
  SUBCASE("strip to an empty metamodel drops everything") {
    MetaModel empty = load_metamodel(R"({"packages": []})");
    Model stripped = strip_to_metamodel(m, std::make_shared<const MetaModel>(empty));
    CHECK(stripped.size() == 0);
  }
}

TEST_CASE("containment stays a forest and chains are acyclic on random models") {
  for (unsigned seed = 1; seed <= 10; ++seed) {
    CAPTURE(seed);
    Model m = random_model(java_metamodel(), seed, 200, 10, "CompilationUnit");
    REQUIRE(m.check_conformance().empty());
    std::size_t root_count = 0;
    for (const auto& id : m.ids()) {
      const auto chain = m.container_chain(id);
      if (chain.empty()) ++root_count;
      std::set<std::string> seen{id};
      for (const auto& edge : chain) CHECK(seen.insert(edge.parent).second);
      // Bidirectional navigation: child's synthetic opposite names its parent.
      if (!chain.empty()) {
        const auto& edge = chain.front();
        const MetaReference* ref = m.metamodel().find_reference(m.node(edge.parent).kind, edge.reference);
        REQUIRE(ref != nullptr);
        std::string opposite = ref->owner + "_" + ref->name + "_opposite";
        CHECK(m.targets(id, opposite) == std::vector<std::string>{edge.parent});
      }
    }
    CHECK(root_count == m.roots().size());
  }
}
