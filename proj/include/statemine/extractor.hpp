#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "statemine/diagnostics.hpp"
#include "statemine/hotgen.hpp"
#include "statemine/model.hpp"

namespace statemine {

struct State {
  std::string name;          // originating class name
  std::string origin_class;  // node id

  bool operator==(const State&) const = default;
};

enum class TriggerRule { MethodName, SwitchCase, CatchBlock, Placeholder };

struct Transition {
  std::string source;  // state name
  std::string target;  // state name
  std::string trigger;
  std::string action;
  std::string site;  // node id of the activate MethodCall
  TriggerRule trigger_rule = TriggerRule::Placeholder;

  bool operator==(const Transition&) const = default;
};

struct TraceLink {
  std::string class_id;  // node id of the originating class
  std::string state_name;

  bool operator==(const TraceLink&) const = default;
};

// One occurrence of the `X.Instance().activate()` chain.
struct ActivationSite {
  std::string activate_call;
  std::string instance_call;
  std::string class_ref;     // leading IdentifierReference
  std::string target_class;  // node id the leading reference resolves to
};

struct StateMachineResult {
  std::vector<State> states;
  std::vector<Transition> transitions;
};

struct Extraction {
  std::optional<StateMachineResult> machine;  // absent iff no class named State exists
  std::vector<TraceLink> traces;
  std::vector<Diagnostic> warnings;
};

struct ExtractOptions {
  bool dedupe = false;  // merge identical (source,target,trigger,action) tuples
};

// The Class node whose name attribute is "State"; absent if none. Two or
// more such classes are ill-formed input and throw.
std::optional<std::string> find_state_root(const Model& m);

// Proper subclass test over resolved `extends` edges; a class is not its own
// subclass. Throws on an extends cycle, naming the classes involved.
bool is_subclass_of(const Model& m, const std::string& sub_class, const std::string& super_class);

// One state per non-abstract proper subclass of the root, in class
// declaration order across files, plus the class->state trace links.
std::pair<std::vector<State>, std::vector<TraceLink>> build_states(const Model& m,
                                                                   const std::string& root_id);

// All IdentifierReference -> Instance() -> activate() chains whose leading
// reference resolves to a class, in model traversal order. Chains with an
// unresolved leading reference are skipped with a warning.
std::vector<ActivationSite> match_activations(const Model& m, std::vector<Diagnostic>* warnings);

struct TriggerResolution {
  std::string text;
  TriggerRule rule = TriggerRule::Placeholder;
};

// Decision chain: method name when the activation occurs outside `run`;
// otherwise the owning switch case's enum constant, the owning catch block's
// exception type, or "--".
TriggerResolution resolve_trigger(const Model& m, const ActivationSite& site,
                                  const OwnerResult& owner, std::vector<Diagnostic>* warnings);

// Scans the direct statements of the statement list container owning the
// activation call for the first send(...) call; the action is the name of the
// enum constant its first argument resolves to, else "--".
std::string resolve_action(const Model& m, const ActivationSite& site,
                           std::vector<Diagnostic>* warnings);

Extraction extract(const Model& m, const ExtractOptions& opts = {});

// Creates StateMachine/State/Transition nodes for the extraction inside m
// (whose metamodel must declare them) and links each state to its source
// class through the declared trace association. Returns the machine node id.
std::string materialize(Model& m, const Extraction& extraction);

}  // namespace statemine
