#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "statemine/diagnostics.hpp"
#include "statemine/metamodel.hpp"

namespace statemine {

using AttrValue = std::variant<std::string, bool, std::int64_t>;

bool attr_value_matches(AttrType type, const AttrValue& value);

struct ContainerEdge {
  std::string parent;
  std::string reference;

  bool operator==(const ContainerEdge&) const = default;
};

struct Node {
  std::string id;
  std::string kind;
  std::map<std::string, AttrValue> attrs;
  std::optional<ContainerEdge> container;
  std::map<std::string, std::vector<std::string>> refs;  // declared slots only
  std::optional<SourceLocation> origin;
};

// Typed instance graph with single-container containment. Nodes are stored in
// creation order; ids are stable strings (`n<counter>` unless supplied).
// Single writer; read-only sharing across threads is safe after construction.
class Model {
 public:
  explicit Model(std::shared_ptr<const MetaModel> metamodel);

  const MetaModel& metamodel() const { return *mm_; }
  std::shared_ptr<const MetaModel> metamodel_ptr() const { return mm_; }

  // Creates a node of a declared, non-abstract kind with no container.
  // Attribute names and value types are checked against the metamodel.
  std::string add_node(const std::string& kind,
                       const std::map<std::string, AttrValue>& attrs = {},
                       std::optional<SourceLocation> origin = std::nullopt);

  // Loader-grade insertion: explicit id, no metamodel checks beyond kind
  // existence. Conformance problems surface through check_conformance.
  std::string add_node_raw(const std::string& id, const std::string& kind);

  // Links child under parent via a containment reference declared on the
  // parent's kind. Rejects cycles, occupied single-valued slots, and
  // re-parenting without a prior detach.
  void set_container(const std::string& child, const std::string& parent, const std::string& reference);

  // Removes child from its container slot, making it a root again.
  void detach(const std::string& child);

  // Appends (or sets) a non-containment reference target.
  void add_reference(const std::string& node, const std::string& reference, const std::string& target);

  void set_attr(const std::string& node, const std::string& name, AttrValue value);

  // Nearest-first ancestors up to a root; empty for roots.
  std::vector<ContainerEdge> container_chain(const std::string& node) const;

  // Reference navigation. Declared slots read stored targets; synthetic
  // opposites are computed (container lookup for containment opposites, a
  // reverse scan in creation order for cross-reference opposites).
  std::vector<std::string> targets(const std::string& node, const std::string& reference) const;

  bool has_node(const std::string& id) const;
  const Node& node(const std::string& id) const;
  Node& node_mut(const std::string& id);

  std::size_t size() const { return order_.size(); }
  const std::vector<std::string>& ids() const { return order_; }  // creation order
  std::vector<std::string> roots() const;                         // creation order

  std::vector<Diagnostic> check_conformance() const;

 private:
  friend Model load_model(const std::string&, std::shared_ptr<const MetaModel>);
  friend Model strip_to_metamodel(const Model&, std::shared_ptr<const MetaModel>);

  const MetaReference& require_reference(const Node& n, const std::string& reference) const;
  bool is_ancestor(const std::string& candidate, const std::string& node) const;
  std::string fresh_id();

  std::shared_ptr<const MetaModel> mm_;
  std::map<std::string, Node> nodes_;
  std::vector<std::string> order_;
  std::int64_t counter_ = 0;
};

// Model JSON: {"metamodel":str,"nodes":[{"id","kind","attrs","container","refs"}]}.
// Node order is creation order; slots for synthetic opposites are never
// written and are dropped (recomputed) on load. Origins are not serialized.
std::string save_model(const Model& m);
Model load_model(const std::string& text, std::shared_ptr<const MetaModel> mm);

// Keeps exactly the nodes whose kinds the target metamodel declares, with
// only their declared (non-synthetic) attributes and reference slots;
// targets pointing out of scope are dropped.
Model strip_to_metamodel(const Model& m, std::shared_ptr<const MetaModel> target_mm);

// Structural equality including node ids and slot contents (origins ignored).
bool models_equal(const Model& a, const Model& b);

// Containment-tree equality ignoring node ids, origins, and cross-reference
// slots: forests are compared root by root on kind, attributes, and
// containment slots in declared order.
bool models_tree_equal(const Model& a, const Model& b);

}  // namespace statemine
