#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "statemine/metamodel.hpp"
#include "statemine/model.hpp"

namespace statemine {

struct DispatchContext {
  std::string container;  // kind declaring the containment reference
  std::string reference;

  bool operator==(const DispatchContext&) const = default;
};

struct DispatchEntry {
  std::string kind;  // non-abstract kind being dispatched on
  std::vector<DispatchContext> contexts;

  bool operator==(const DispatchEntry&) const = default;
};

struct PlanStats {
  int types_checked = 0;      // number of dispatch entries
  int containment_links = 0;  // total contexts across entries

  bool operator==(const PlanStats&) const = default;
};

// Executable dispatch structure derived from the metamodel alone: for every
// non-abstract kind that can be contained somewhere, the ordered list of
// containment contexts through which the walk may step to the container.
struct TraversalPlan {
  std::string target;
  std::vector<std::string> collect;
  std::vector<DispatchEntry> entries;
  PlanStats stats;

  bool operator==(const TraversalPlan&) const = default;
};

// Pure function of (mm, target, collect); entry order is metamodel
// declaration order. Target and collect kinds must be declared (abstract is
// fine — conformance is used when matching).
TraversalPlan generate_plan(const MetaModel& mm, const std::string& target,
                            const std::vector<std::string>& collect);

struct OwnerResult {
  std::optional<std::string> owner;  // nearest ancestor conforming to the target kind
  // One entry per collect kind, in plan order: nearest ancestor of that kind
  // seen no deeper than the owner. All empty when the owner is absent.
  std::vector<std::pair<std::string, std::optional<std::string>>> collected;
  int visited_depth = 0;  // container edges walked when the search stopped

  std::optional<std::string> collected_for(const std::string& kind) const;
};

// Walks the container chain nearest-first, stepping only through contexts the
// plan lists for the current node's kind. A node that itself conforms to the
// target kind is its own owner at depth 0.
OwnerResult find_owner(const TraversalPlan& plan, const Model& m, const std::string& node_id);

// Same contract as find_owner, implemented as a direct container_chain scan
// with kind_conforms checks and no plan involved. Test oracle.
OwnerResult find_owner_oracle(const Model& m, const std::string& node_id, const std::string& target,
                              const std::vector<std::string>& collect);

// DOT digraph: one node per entry kind, one edge per context labeled with the
// reference name. Deterministic; labels escaped.
std::string render_plan_dot(const TraversalPlan& plan);

// Stable-key-order JSON rendering of the plan.
std::string render_plan_json(const TraversalPlan& plan);

}  // namespace statemine
