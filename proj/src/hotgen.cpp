#include "statemine/hotgen.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>

namespace statemine {

using json = nlohmann::ordered_json;

std::optional<std::string> OwnerResult::collected_for(const std::string& kind) const {
  for (const auto& [k, id] : collected)
    if (k == kind) return id;
  return std::nullopt;
}

TraversalPlan generate_plan(const MetaModel& mm, const std::string& target,
                            const std::vector<std::string>& collect) {
  mm.require_class(target);
  for (const auto& k : collect) mm.require_class(k);

  TraversalPlan plan;
  plan.target = target;
  plan.collect = collect;
  for (const MetaClass* mc : mm.all_classes()) {
    if (mc->is_abstract) continue;
    auto contexts = containment_contexts(mm, mc->name);
    if (contexts.empty()) continue;
    DispatchEntry entry;
    entry.kind = mc->name;
    for (auto& [container, reference] : contexts)
      entry.contexts.push_back(DispatchContext{container, reference});
    plan.stats.containment_links += static_cast<int>(entry.contexts.size());
    plan.entries.push_back(std::move(entry));
  }
  plan.stats.types_checked = static_cast<int>(plan.entries.size());
  return plan;
}

namespace {

struct CollectTracker {
  std::vector<std::pair<std::string, std::optional<std::string>>> slots;

  explicit CollectTracker(const std::vector<std::string>& kinds) {
    for (const auto& k : kinds) slots.emplace_back(k, std::nullopt);
  }

  void offer(const MetaModel& mm, const Node& n) {
    for (auto& [kind, id] : slots)
      if (!id && kind_conforms(mm, n.kind, kind)) id = n.id;
  }

  void clear() {
    for (auto& [kind, id] : slots) id.reset();
  }
};

}  // namespace

OwnerResult find_owner(const TraversalPlan& plan, const Model& m, const std::string& node_id) {
  const MetaModel& mm = m.metamodel();
  OwnerResult result;
  CollectTracker tracker(plan.collect);

  const Node* cur = &m.node(node_id);
  if (kind_conforms(mm, cur->kind, plan.target)) {
    // The argument is already an instance of the target kind.
    result.owner = cur->id;
    result.collected = tracker.slots;
    return result;
  }

  auto entry_for = [&plan](const std::string& kind) -> const DispatchEntry* {
    for (const auto& entry : plan.entries)
      if (entry.kind == kind) return &entry;
    return nullptr;
  };

  for (;;) {
    const DispatchEntry* entry = entry_for(cur->kind);
    if (!entry) break;  // kind has no containment context: must be a root

    const Node* next = nullptr;
    if (cur->container) {
      for (const auto& ctx : entry->contexts) {
        if (cur->container->reference != ctx.reference) continue;
        const Node& parent = m.node(cur->container->parent);
        if (!kind_conforms(mm, parent.kind, ctx.container)) continue;
        next = &parent;
        break;
      }
    }
    if (!next) break;

    cur = next;
    ++result.visited_depth;
    tracker.offer(mm, *cur);
    if (kind_conforms(mm, cur->kind, plan.target)) {
      result.owner = cur->id;
      break;
    }
  }

  if (!result.owner) tracker.clear();  // nothing is reported without an owner
  result.collected = tracker.slots;
  return result;
}

OwnerResult find_owner_oracle(const Model& m, const std::string& node_id, const std::string& target,
                              const std::vector<std::string>& collect) {
  const MetaModel& mm = m.metamodel();
  OwnerResult result;
  CollectTracker tracker(collect);

  const Node& start = m.node(node_id);
  if (kind_conforms(mm, start.kind, target)) {
    result.owner = start.id;
    result.collected = tracker.slots;
    return result;
  }

  for (const ContainerEdge& edge : m.container_chain(node_id)) {
    const Node& anc = m.node(edge.parent);
    ++result.visited_depth;
    tracker.offer(mm, anc);
    if (kind_conforms(mm, anc.kind, target)) {
      result.owner = anc.id;
      break;
    }
  }

  if (!result.owner) tracker.clear();
  result.collected = tracker.slots;
  return result;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out;
}

std::string dot_quoted(const std::string& s) { return '"' + dot_escape(s) + '"'; }

}  // namespace

std::string render_plan_dot(const TraversalPlan& plan) {
  std::string label = "owner search: target=" + plan.target + " collect=[";
  for (std::size_t i = 0; i < plan.collect.size(); ++i) {
    if (i) label += ", ";
    label += plan.collect[i];
  }
  label += "]";

  std::string out = "digraph plan {\n";
  out += "  label=" + dot_quoted(label) + ";\n";
  for (const auto& entry : plan.entries) {
    out += "  " + dot_quoted(entry.kind) + ";\n";
    for (const auto& ctx : entry.contexts)
      out += "  " + dot_quoted(entry.kind) + " -> " + dot_quoted(ctx.container) +
             " [label=" + dot_quoted(ctx.reference) + "];\n";
  }
  out += "}\n";
  return out;
}

std::string render_plan_json(const TraversalPlan& plan) {
  json doc;
  doc["target"] = plan.target;
  doc["collect"] = plan.collect;
  doc["entries"] = json::array();
  for (const auto& entry : plan.entries) {
    json je;
    je["kind"] = entry.kind;
    je["contexts"] = json::array();
    for (const auto& ctx : entry.contexts) {
      json jc;
      jc["container"] = ctx.container;
      jc["reference"] = ctx.reference;
      je["contexts"].push_back(std::move(jc));
    }
    doc["entries"].push_back(std::move(je));
  }
  doc["stats"] = json::object();
  doc["stats"]["typesChecked"] = plan.stats.types_checked;
  doc["stats"]["containmentLinks"] = plan.stats.containment_links;
  return doc.dump(2) + "\n";
}

}  // namespace statemine
