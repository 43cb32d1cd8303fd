#include "statemine/java_frontend.hpp"

#include <algorithm>

namespace statemine::java {

namespace {

std::string attr_text(const Node& n, const std::string& name) {
  auto it = n.attrs.find(name);
  if (it == n.attrs.end() || !std::holds_alternative<std::string>(it->second)) return {};
  return std::get<std::string>(it->second);
}

struct NameTable {
  // (name, node id) in declaration order across the whole model.
  std::vector<std::pair<std::string, std::string>> enum_constants;
  std::vector<std::pair<std::string, std::string>> classes;

  static std::vector<std::string> lookup(
      const std::vector<std::pair<std::string, std::string>>& table, const std::string& name) {
    std::vector<std::string> out;
    for (const auto& [n, id] : table)
      if (n == name) out.push_back(id);
    return out;
  }
};

SourceLocation origin_of(const Node& n) { return n.origin.value_or(SourceLocation{}); }

// Innermost scope first: catch parameters, then method parameters, then the
// fields of the enclosing class.
std::vector<std::string> scope_candidates(const Model& m, const Node& ref, const std::string& name) {
  std::vector<std::string> out;
  const Node* cur = &ref;
  while (cur->container) {
    cur = &m.node(cur->container->parent);
    auto match_slot = [&](const char* slot) {
      auto it = cur->refs.find(slot);
      if (it == cur->refs.end()) return;
      for (const auto& pid : it->second) {
        const Node& candidate = m.node(pid);
        if (candidate.kind == "Parameter" && attr_text(candidate, "name") == name)
          out.push_back(pid);
      }
    };
    if (cur->kind == "CatchBlock") match_slot("parameter");
    if (cur->kind == "ClassMethod") match_slot("parameters");
    if (cur->kind == "Class") {
      auto it = cur->refs.find("members");
      if (it != cur->refs.end())
        for (const auto& mid : it->second) {
          const Node& member = m.node(mid);
          if (member.kind == "Field" && attr_text(member, "name") == name) out.push_back(mid);
        }
      break;
    }
  }
  return out;
}

bool is_case_label(const Model& m, const Node& n) {
  return n.container && n.container->reference == "condition" &&
         m.node(n.container->parent).kind == "NormalSwitchCase";
}

}  // namespace

std::vector<Diagnostic> resolve_names(Model& m) {
  std::vector<Diagnostic> diags;
  NameTable table;
  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    if (n.kind == "EnumConstant") table.enum_constants.emplace_back(attr_text(n, "name"), id);
    if (n.kind == "Class") table.classes.emplace_back(attr_text(n, "name"), id);
  }

  auto ambiguity = [&diags](const std::string& what, const std::string& name, std::size_t count,
                            const SourceLocation& at) {
    diags.push_back(warning("ambiguous " + what + " '" + name + "' (" + std::to_string(count) +
                                " candidates); using the first declaration",
                            at));
  };

  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);

    if (n.kind == "Class") {
      std::string sup = attr_text(n, "extendsName");
      if (sup.empty()) continue;
      auto candidates = NameTable::lookup(table.classes, sup);
      if (candidates.empty()) {
        diags.push_back(warning("unresolved superclass name '" + sup + "'", origin_of(n)));
        continue;
      }
      if (candidates.size() > 1) ambiguity("superclass name", sup, candidates.size(), origin_of(n));
      m.add_reference(id, "extends", candidates.front());
      continue;
    }

    if (n.kind != "IdentifierReference") continue;
    const std::string name = attr_text(n, "name");

    if (is_case_label(m, n)) {
      // Case labels resolve by simple name across all enumerations.
      auto candidates = NameTable::lookup(table.enum_constants, name);
      if (candidates.empty()) {
        diags.push_back(
            warning("case label '" + name + "' does not resolve to an enumeration constant",
                    origin_of(n)));
        continue;
      }
      if (candidates.size() > 1) ambiguity("case label", name, candidates.size(), origin_of(n));
      m.add_reference(id, "target", candidates.front());
      continue;
    }

    // Only leading references of a chain carry a name to resolve.
    if (n.container && n.container->reference == "next") continue;

    auto candidates = NameTable::lookup(table.enum_constants, name);
    std::string what = "name";
    if (candidates.empty()) candidates = NameTable::lookup(table.classes, name);
    if (candidates.empty()) candidates = scope_candidates(m, n, name);
    if (candidates.empty()) {
      diags.push_back(warning("unresolved name '" + name + "'", origin_of(n)));
      continue;
    }
    if (candidates.size() > 1) ambiguity(what, name, candidates.size(), origin_of(n));
    m.add_reference(id, "target", candidates.front());
  }
  return diags;
}

}  // namespace statemine::java
