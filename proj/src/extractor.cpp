#include "statemine/extractor.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace statemine {

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

SourceLocation origin_of(const Node& n) { return n.origin.value_or(SourceLocation{}); }

const std::vector<std::string>& slot(const Node& n, const char* name) {
  static const std::vector<std::string> empty;
  auto it = n.refs.find(name);
  return it == n.refs.end() ? empty : it->second;
}

std::optional<std::string> single(const Node& n, const char* name) {
  const auto& s = slot(n, name);
  if (s.empty()) return std::nullopt;
  return s.front();
}

constexpr const char* kPlaceholder = "--";

}  // namespace

std::optional<std::string> find_state_root(const Model& m) {
  std::vector<std::string> found;
  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    if (n.kind == "Class" && attr_text(n, "name") == "State") found.push_back(id);
  }
  if (found.size() > 1)
    throw Error("ill-formed input: " + std::to_string(found.size()) + " classes named 'State'",
                origin_of(m.node(found[1])));
  if (found.empty()) return std::nullopt;
  return found.front();
}

bool is_subclass_of(const Model& m, const std::string& sub_class, const std::string& super_class) {
  std::set<std::string> visited;
  std::string cur = sub_class;
  for (;;) {
    if (!visited.insert(cur).second) {
      std::string names;
      for (const auto& id : visited) {
        if (!names.empty()) names += ", ";
        names += attr_text(m.node(id), "name");
      }
      throw Error("extends cycle among classes {" + names + "}", origin_of(m.node(sub_class)));
    }
    auto next = single(m.node(cur), "extends");
    if (!next) return false;
    if (*next == super_class) return true;
    cur = *next;
  }
}

std::pair<std::vector<State>, std::vector<TraceLink>> build_states(const Model& m,
                                                                   const std::string& root_id) {
  std::vector<State> states;
  std::vector<TraceLink> traces;
  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    if (n.kind != "Class" || attr_flag(n, "abstract")) continue;
    if (!is_subclass_of(m, id, root_id)) continue;
    states.push_back(State{attr_text(n, "name"), id});
    traces.push_back(TraceLink{id, attr_text(n, "name")});
  }
  return {std::move(states), std::move(traces)};
}

std::vector<ActivationSite> match_activations(const Model& m, std::vector<Diagnostic>* warnings) {
  std::vector<ActivationSite> sites;
  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    if (n.kind != "MethodCall" || attr_text(n, "name") != "activate" || !slot(n, "arguments").empty())
      continue;
    if (!n.container || n.container->reference != "next") continue;

    const Node& instance = m.node(n.container->parent);
    if (instance.kind != "MethodCall" || attr_text(instance, "name") != "Instance" ||
        !slot(instance, "arguments").empty())
      continue;
    if (!instance.container || instance.container->reference != "next") continue;

    const Node& head = m.node(instance.container->parent);
    if (head.kind != "IdentifierReference") continue;

    auto target = single(head, "target");
    if (!target) {
      if (warnings)
        warnings->push_back(warning("activation chain skipped: leading reference '" +
                                        attr_text(head, "name") + "' is unresolved",
                                    origin_of(head)));
      continue;
    }
    if (m.node(*target).kind != "Class") continue;
    sites.push_back(ActivationSite{n.id, instance.id, head.id, *target});
  }
  return sites;
}

namespace {

// Last segment of a pure identifier chain (no calls on the way); nullptr when
// the expression is anything else.
const Node* chain_tail_identifier(const Model& m, const Node& head) {
  const Node* cur = &head;
  for (;;) {
    if (cur->kind != "IdentifierReference") return nullptr;
    auto next = single(*cur, "next");
    if (!next) return cur;
    cur = &m.node(*next);
  }
}

// The enumeration constant an argument expression names, either through the
// resolved target of a bare reference or by global constant lookup for
// qualified forms like Event.ACK.
std::optional<std::string> argument_enum_constant(const Model& m, const Node& arg) {
  const Node* tail = chain_tail_identifier(m, arg);
  if (!tail) return std::nullopt;
  if (auto target = single(*tail, "target")) {
    const Node& t = m.node(*target);
    if (t.kind == "EnumConstant") return attr_text(t, "name");
    return std::nullopt;
  }
  const std::string name = attr_text(*tail, "name");
  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    if (n.kind == "EnumConstant" && attr_text(n, "name") == name) return name;
  }
  return std::nullopt;
}

}  // namespace

TriggerResolution resolve_trigger(const Model& m, const ActivationSite& site,
                                  const OwnerResult& owner, std::vector<Diagnostic>* warnings) {
  (void)site;
  if (!owner.owner) return {kPlaceholder, TriggerRule::Placeholder};
  const Node& method = m.node(*owner.owner);

  if (attr_text(method, "name") != "run")
    return {attr_text(method, "name"), TriggerRule::MethodName};

  if (auto nsc_id = owner.collected_for("NormalSwitchCase")) {
    const Node& nsc = m.node(*nsc_id);
    if (auto cond = single(nsc, "condition")) {
      const Node& label = m.node(*cond);
      if (auto target = single(label, "target")) {
        const Node& constant = m.node(*target);
        if (constant.kind == "EnumConstant")
          return {attr_text(constant, "name"), TriggerRule::SwitchCase};
      }
      std::string raw = attr_text(label, "name");
      if (!raw.empty()) {
        if (warnings)
          warnings->push_back(warning(
              "case label '" + raw + "' does not resolve to an enumeration constant; using its text",
              origin_of(label)));
        return {raw, TriggerRule::SwitchCase};
      }
    }
    if (warnings)
      warnings->push_back(
          warning("owning switch case has no usable label; trigger set to placeholder",
                  origin_of(nsc)));
    return {kPlaceholder, TriggerRule::SwitchCase};
  }

  if (auto cb_id = owner.collected_for("CatchBlock")) {
    const Node& cb = m.node(*cb_id);
    if (auto param = single(cb, "parameter")) {
      std::string type = attr_text(m.node(*param), "typeName");
      if (!type.empty()) return {type, TriggerRule::CatchBlock};
    }
    if (warnings)
      warnings->push_back(warning(
          "owning catch block has no typed parameter; trigger set to placeholder", origin_of(cb)));
    return {kPlaceholder, TriggerRule::CatchBlock};
  }

  return {kPlaceholder, TriggerRule::Placeholder};
}

namespace {

// Pre-order walk over the expression subtrees hanging off one statement,
// without entering nested statement-list realms.
void collect_send_calls(const Model& m, const std::string& node_id,
                        std::vector<std::string>& out) {
  const Node& n = m.node(node_id);
  if (n.kind == "MethodCall" && attr_text(n, "name") == "send" && !slot(n, "arguments").empty())
    out.push_back(node_id);
  for (const MetaReference* ref : m.metamodel().all_references(n.kind)) {
    if (!ref->containment || ref->synthetic) continue;
    for (const auto& child : slot(n, ref->name.c_str())) {
      const std::string& kind = m.node(child).kind;
      if (kind_conforms(m.metamodel(), kind, "Statement") ||
          kind_conforms(m.metamodel(), kind, "SwitchCase") ||
          kind_conforms(m.metamodel(), kind, "CatchBlock"))
        continue;
      collect_send_calls(m, child, out);
    }
  }
}

}  // namespace

std::string resolve_action(const Model& m, const ActivationSite& site,
                           std::vector<Diagnostic>* warnings) {
  // Nearest statement list container owning the activation call.
  const Node* container = nullptr;
  for (const ContainerEdge& edge : m.container_chain(site.activate_call)) {
    const Node& anc = m.node(edge.parent);
    if (kind_conforms(m.metamodel(), anc.kind, "StatementListContainer")) {
      container = &anc;
      break;
    }
  }
  if (!container) return kPlaceholder;

  std::vector<std::string> sends;
  for (const auto& stmt : slot(*container, "statements")) collect_send_calls(m, stmt, sends);
  if (sends.empty()) return kPlaceholder;

  const Node& send = m.node(sends.front());
  const Node& arg = m.node(slot(send, "arguments").front());
  if (auto constant = argument_enum_constant(m, arg)) return *constant;
  if (warnings)
    warnings->push_back(warning(
        "send call argument does not resolve to an enumeration constant; action set to placeholder",
        origin_of(send)));
  return kPlaceholder;
}

Extraction extract(const Model& m, const ExtractOptions& opts) {
  Extraction x;
  auto root = find_state_root(m);
  if (!root) {
    x.warnings.push_back(warning("no class named 'State' found; state machine not created"));
    return x;
  }

  StateMachineResult machine;
  auto [states, traces] = build_states(m, *root);
  machine.states = std::move(states);
  x.traces = std::move(traces);

  std::map<std::string, std::string> state_of_class;  // class node id -> state name
  for (const auto& s : machine.states) state_of_class.emplace(s.origin_class, s.name);

  TraversalPlan plan =
      generate_plan(m.metamodel(), "ClassMethod", {"NormalSwitchCase", "CatchBlock"});

  for (const ActivationSite& site : match_activations(m, &x.warnings)) {
    const Node& call = m.node(site.activate_call);
    OwnerResult owner = find_owner(plan, m, site.activate_call);
    if (!owner.owner) {
      x.warnings.push_back(warning("activation call has no owning class method; transition skipped",
                                   origin_of(call)));
      continue;
    }
    const Node& method = m.node(*owner.owner);
    if (!method.container || m.node(method.container->parent).kind != "Class") {
      x.warnings.push_back(
          warning("owning class method is not a class member; transition skipped", origin_of(call)));
      continue;
    }
    const std::string owner_class = method.container->parent;

    auto source = state_of_class.find(owner_class);
    if (source == state_of_class.end()) {
      x.warnings.push_back(warning("activation in class '" +
                                       attr_text(m.node(owner_class), "name") +
                                       "' which has no state; transition skipped",
                                   origin_of(call)));
      continue;
    }
    auto target = state_of_class.find(site.target_class);
    if (target == state_of_class.end()) {
      x.warnings.push_back(warning("activation target class '" +
                                       attr_text(m.node(site.target_class), "name") +
                                       "' has no state; transition skipped",
                                   origin_of(call)));
      continue;
    }

    TriggerResolution trigger = resolve_trigger(m, site, owner, &x.warnings);
    std::string action = resolve_action(m, site, &x.warnings);
    machine.transitions.push_back(Transition{source->second, target->second, trigger.text, action,
                                             site.activate_call, trigger.rule});
  }

  if (opts.dedupe) {
    std::set<std::tuple<std::string, std::string, std::string, std::string>> seen;
    std::vector<Transition> unique;
    for (auto& t : machine.transitions)
      if (seen.emplace(t.source, t.target, t.trigger, t.action).second)
        unique.push_back(std::move(t));
    machine.transitions = std::move(unique);
  }

  x.machine = std::move(machine);
  return x;
}

std::string materialize(Model& m, const Extraction& extraction) {
  if (!extraction.machine) throw Error("nothing to materialize: extraction has no state machine");

  std::string machine = m.add_node("StateMachine");
  std::map<std::string, std::string> state_nodes;  // state name -> node id
  for (const auto& s : extraction.machine->states) {
    std::string node = m.add_node("State", {{"name", s.name}});
    m.set_container(node, machine, "states");
    state_nodes.emplace(s.name, node);
  }
  for (const auto& t : extraction.machine->transitions) {
    std::string node = m.add_node("Transition", {{"trigger", t.trigger}, {"action", t.action}});
    m.set_container(node, machine, "transitions");
    m.add_reference(node, "source", state_nodes.at(t.source));
    m.add_reference(node, "target", state_nodes.at(t.target));
  }
  for (const auto& trace : extraction.traces) {
    auto it = state_nodes.find(trace.state_name);
    if (it == state_nodes.end()) continue;
    m.add_reference(trace.class_id, "state", it->second);
    m.add_reference(it->second, "javaClass", trace.class_id);
  }
  return machine;
}

}  // namespace statemine
