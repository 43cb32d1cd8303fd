#include <doctest.h>

#include "statemine/embedded.hpp"
#include "statemine/hotgen.hpp"
#include "statemine/java_frontend.hpp"

#include "test_support.hpp"

using namespace statemine;
using namespace test_support;

namespace {

const std::vector<std::string> kCollect = {"NormalSwitchCase", "CatchBlock"};

std::string find_named(const Model& m, const std::string& kind, const std::string& name) {
  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    if (n.kind == kind && n.attrs.count("name") &&
        std::get<std::string>(n.attrs.at("name")) == name)
      return id;
  }
  return {};
}

bool owner_results_equal(const OwnerResult& a, const OwnerResult& b) {
  return a.owner == b.owner && a.collected == b.collected && a.visited_depth == b.visited_depth;
}

}  // namespace

TEST_CASE("plan on the shipped metamodel reproduces the frozen statistics") {
  MetaModel mm = *java_metamodel();
  TraversalPlan plan = generate_plan(mm, "ClassMethod", kCollect);

  // Frozen from the brute-force enumeration over data/java_subset.mmjson.
  CHECK(plan.stats.types_checked == 20);
  CHECK(plan.stats.containment_links == 92);

  // Entries cover exactly the non-abstract kinds with a non-empty context set,
  // in declaration order, with brute-force context lists.
  std::vector<DispatchEntry> expected;
  for (const MetaClass* mc : mm.all_classes()) {
    if (mc->is_abstract) continue;
    auto contexts = contexts_bruteforce(mm, mc->name);
    if (contexts.empty()) continue;
    DispatchEntry entry{mc->name, {}};
    for (auto& [container, reference] : contexts)
      entry.contexts.push_back(DispatchContext{container, reference});
    expected.push_back(std::move(entry));
  }
  CHECK(plan.entries == expected);
  int links = 0;
  for (const auto& e : expected) links += static_cast<int>(e.contexts.size());
  CHECK(plan.stats.containment_links == links);
  CHECK(plan.stats.types_checked == static_cast<int>(expected.size()));
}

TEST_CASE("plan generation validates its kind arguments but allows abstract targets") {
  MetaModel mm = *java_metamodel();
  CHECK_THROWS_AS(generate_plan(mm, "NoSuchKind", {}), Error);
  CHECK_THROWS_AS(generate_plan(mm, "ClassMethod", {"NoSuchKind"}), Error);
  TraversalPlan plan = generate_plan(mm, "Statement", {});
  CHECK(plan.target == "Statement");
}

TEST_CASE("a metamodel without containment references yields an empty plan") {
  MetaModel mm = load_metamodel(R"({"packages": [{"name": "p", "classes": [
    {"name": "A", "abstract": false, "supertypes": [], "attributes": [], "references": []}
  ]}]})");
  TraversalPlan plan = generate_plan(mm, "A", {});
  CHECK(plan.entries.empty());
  CHECK(plan.stats == PlanStats{0, 0});
  std::string dot = render_plan_dot(plan);
  CHECK(dot.rfind("digraph plan {", 0) == 0);
  CHECK(dot.find("target=A") != std::string::npos);
  CHECK(dot_well_formed(dot));
}

TEST_CASE("find_owner walks to the owning method and collects the nearest case") {
  Model m = parse_fixture(fixture_sources("tests/fixtures/two_state"));
  TraversalPlan plan = generate_plan(m.metamodel(), "ClassMethod", kCollect);

  // The activation inside `case STOP:` of Running.run.
  std::string activate;
  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    if (n.kind == "MethodCall" && std::get<std::string>(n.attrs.at("name")) == "activate" &&
        m.container_chain(id).size() > 7)
      activate = id;
  }
  REQUIRE_FALSE(activate.empty());

  OwnerResult r = find_owner(plan, m, activate);
  REQUIRE(r.owner.has_value());
  CHECK(*r.owner == find_named(m, "ClassMethod", "run"));
  CHECK(r.visited_depth == 7);
  auto nsc = r.collected_for("NormalSwitchCase");
  REQUIRE(nsc.has_value());
  CHECK(m.node(*nsc).kind == "NormalSwitchCase");
  CHECK_FALSE(r.collected_for("CatchBlock").has_value());

  SUBCASE("an argument that is already a class method is its own owner") {
    std::string run = find_named(m, "ClassMethod", "run");
    OwnerResult self = find_owner(plan, m, run);
    CHECK(self.owner == run);
    CHECK(self.visited_depth == 0);
    CHECK_FALSE(self.collected_for("NormalSwitchCase").has_value());
  }

  SUBCASE("unknown nodes are rejected") {
    CHECK_THROWS_AS(find_owner(plan, m, "ghost"), Error);
    CHECK_THROWS_AS(find_owner_oracle(m, "ghost", "ClassMethod", kCollect), Error);
  }
}

TEST_CASE("expressions in field initializers have no owning method") {
  Model m = parse_fixture({{"A.java", "class A { Bus b = new Bus(); }"}});
  TraversalPlan plan = generate_plan(m.metamodel(), "ClassMethod", kCollect);
  std::string inst;
  for (const auto& id : m.ids())
    if (m.node(id).kind == "Instantiation") inst = id;
  REQUIRE_FALSE(inst.empty());

  OwnerResult r = find_owner(plan, m, inst);
  CHECK_FALSE(r.owner.has_value());
  CHECK_FALSE(r.collected_for("NormalSwitchCase").has_value());
  CHECK_FALSE(r.collected_for("CatchBlock").has_value());
  CHECK(owner_results_equal(r, find_owner_oracle(m, inst, "ClassMethod", kCollect)));
}

TEST_CASE("the catch-block collector reports the nearest enclosing catch") {
  Model m = parse_fixture(fixture_sources("tests/fixtures/trigger_catch"));
  TraversalPlan plan = generate_plan(m.metamodel(), "ClassMethod", kCollect);
  std::string activate;
  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    if (n.kind == "MethodCall" && std::get<std::string>(n.attrs.at("name")) == "activate")
      activate = id;
  }
  OwnerResult r = find_owner(plan, m, activate);
  REQUIRE(r.owner.has_value());
  auto cb = r.collected_for("CatchBlock");
  REQUIRE(cb.has_value());
  CHECK(m.node(*cb).kind == "CatchBlock");
  CHECK_FALSE(r.collected_for("NormalSwitchCase").has_value());
}

TEST_CASE("find_owner agrees with the oracle on every node of every fixture") {
  for (const char* dir :
       {"tests/fixtures/two_state", "tests/fixtures/trigger_catch",
        "tests/fixtures/trigger_switch_case", "tests/fixtures/trigger_if_fallback",
        "tests/fixtures/action_qualified", "tests/fixtures/non_state_warn"}) {
    CAPTURE(dir);
    Model m = parse_fixture(fixture_sources(dir));
    TraversalPlan plan = generate_plan(m.metamodel(), "ClassMethod", kCollect);
    for (const auto& id : m.ids()) {
      CAPTURE(id);
      CHECK(owner_results_equal(find_owner(plan, m, id),
                                find_owner_oracle(m, id, "ClassMethod", kCollect)));
    }
  }
}

TEST_CASE("find_owner agrees with the oracle on random conforming models") {
  auto mm = java_metamodel();
  TraversalPlan plan = generate_plan(*mm, "ClassMethod", kCollect);
  for (unsigned seed = 1; seed <= 30; ++seed) {
    CAPTURE(seed);
    Model m = random_model(mm, seed, 200, 12, "CompilationUnit");
    for (const auto& id : m.ids()) {
      CAPTURE(id);
      OwnerResult fast = find_owner(plan, m, id);
      OwnerResult slow = find_owner_oracle(m, id, "ClassMethod", kCollect);
      REQUIRE(owner_results_equal(fast, slow));

      // Owner minimality and collection bounds, against the raw chain.
      auto chain = m.container_chain(id);
      if (fast.owner && *fast.owner != id) {
        int owner_pos = -1;
        for (std::size_t i = 0; i < chain.size(); ++i) {
          bool is_target = kind_conforms(*mm, m.node(chain[i].parent).kind, "ClassMethod");
          if (is_target) {
            owner_pos = static_cast<int>(i);
            break;
          }
        }
        REQUIRE(owner_pos >= 0);
        CHECK(chain[static_cast<std::size_t>(owner_pos)].parent == *fast.owner);
        CHECK(fast.visited_depth == owner_pos + 1);
        for (const auto& [kind, collected] : fast.collected)
          if (collected) {
            int pos = -1;
            for (std::size_t i = 0; i < chain.size(); ++i)
              if (chain[i].parent == *collected) pos = static_cast<int>(i);
            CHECK(pos >= 0);
            CHECK(pos <= owner_pos);  // never deeper than the owner
          }
      }
    }
  }
}

TEST_CASE("plan generation and rendering are pure functions") {
  MetaModel mm = *java_metamodel();
  TraversalPlan a = generate_plan(mm, "ClassMethod", kCollect);
  TraversalPlan b = generate_plan(mm, "ClassMethod", kCollect);
  CHECK(a == b);
  CHECK(render_plan_json(a) == render_plan_json(b));
  CHECK(render_plan_dot(a) == render_plan_dot(b));
}

TEST_CASE("plan renderings match the golden files") {
  TraversalPlan plan = generate_plan(*java_metamodel(), "ClassMethod", kCollect);
  CHECK(render_plan_json(plan) == read_file(repo_path("tests/golden/plan_classmethod.json")));
  CHECK(render_plan_dot(plan) == read_file(repo_path("tests/golden/plan_classmethod.dot")));
  CHECK(dot_well_formed(render_plan_dot(plan)));
}

TEST_CASE("DOT labels with quotes and backslashes are escaped") {
  TraversalPlan plan;
  plan.target = "Weird\"Kind";
  plan.collect = {"Other\\Kind"};
  plan.entries.push_back(DispatchEntry{
      "Weird\"Kind", {DispatchContext{"Container\"K", "ref\"name"}}});
  std::string dot = render_plan_dot(plan);
  std::string why;
  CHECK_MESSAGE(dot_well_formed(dot, &why), why);
  CHECK(dot.find("\\\"") != std::string::npos);
}
