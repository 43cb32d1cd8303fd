#include "statemine/model.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace statemine {

using json = nlohmann::ordered_json;

bool attr_value_matches(AttrType type, const AttrValue& value) {
  switch (type) {
    case AttrType::Text: return std::holds_alternative<std::string>(value);
    case AttrType::Boolean: return std::holds_alternative<bool>(value);
    case AttrType::Integer: return std::holds_alternative<std::int64_t>(value);
  }
  return false;
}

Model::Model(std::shared_ptr<const MetaModel> metamodel) : mm_(std::move(metamodel)) {}

std::string Model::fresh_id() {
  for (;;) {
    std::string id = "n" + std::to_string(++counter_);
    if (!nodes_.count(id)) return id;
  }
}

std::string Model::add_node(const std::string& kind, const std::map<std::string, AttrValue>& attrs,
                            std::optional<SourceLocation> origin) {
  const MetaClass& mc = mm_->require_class(kind);
  if (mc.is_abstract) throw Error("cannot instantiate abstract kind '" + kind + "'");
  for (const auto& [name, value] : attrs) {
    const MetaAttribute* attr = mm_->find_attribute(kind, name);
    if (!attr) throw Error("kind '" + kind + "' declares no attribute '" + name + "'");
    if (!attr_value_matches(attr->type, value))
      throw Error("attribute '" + name + "' of kind '" + kind + "' expects " +
                  attr_type_name(attr->type));
  }
  std::string id = fresh_id();
  Node n;
  n.id = id;
  n.kind = kind;
  n.attrs = attrs;
  n.origin = std::move(origin);
  nodes_.emplace(id, std::move(n));
  order_.push_back(id);
  return id;
}

std::string Model::add_node_raw(const std::string& id, const std::string& kind) {
  if (nodes_.count(id)) throw Error("duplicate node id '" + id + "'");
  Node n;
  n.id = id;
  n.kind = kind;
  nodes_.emplace(id, std::move(n));
  order_.push_back(id);
  // Keep generated ids fresh relative to loaded numeric ones.
  if (id.size() > 1 && id[0] == 'n' && id.find_first_not_of("0123456789", 1) == std::string::npos) {
    std::int64_t v = std::strtoll(id.c_str() + 1, nullptr, 10);
    counter_ = std::max(counter_, v);
  }
  return id;
}

bool Model::has_node(const std::string& id) const { return nodes_.count(id) != 0; }

const Node& Model::node(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error("unknown node '" + id + "'");
  return it->second;
}

Node& Model::node_mut(const std::string& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error("unknown node '" + id + "'");
  return it->second;
}

const MetaReference& Model::require_reference(const Node& n, const std::string& reference) const {
  const MetaReference* ref = mm_->find_reference(n.kind, reference);
  if (!ref) throw Error("kind '" + n.kind + "' declares no reference '" + reference + "'");
  return *ref;
}

bool Model::is_ancestor(const std::string& candidate, const std::string& start) const {
  const Node* cur = &node(start);
  std::size_t steps = 0;
  while (cur->container) {
    if (cur->container->parent == candidate) return true;
    cur = &node(cur->container->parent);
    if (++steps > order_.size())
      throw Error("containment cycle detected while walking ancestors of '" + start + "'");
  }
  return false;
}

void Model::set_container(const std::string& child, const std::string& parent,
                          const std::string& reference) {
  Node& c = node_mut(child);
  Node& p = node_mut(parent);
  const MetaReference& ref = require_reference(p, reference);
  if (!ref.containment)
    throw Error("reference '" + reference + "' on kind '" + p.kind + "' is not a containment reference");
  if (!kind_conforms(*mm_, c.kind, ref.target))
    throw Error("kind '" + c.kind + "' does not conform to slot target '" + ref.target + "'");
  if (c.container)
    throw Error("node '" + child + "' is already contained (detach it first)");
  if (child == parent || is_ancestor(child, parent))
    throw Error("containment cycle: '" + parent + "' is inside the subtree of '" + child + "'");
  auto& slot = p.refs[reference];
  if (!ref.many && !slot.empty())
    throw Error("single-valued slot '" + p.kind + "." + reference + "' on '" + parent + "' is already occupied");
  slot.push_back(child);
  c.container = ContainerEdge{parent, reference};
}

void Model::detach(const std::string& child) {
  Node& c = node_mut(child);
  if (!c.container) return;
  Node& p = node_mut(c.container->parent);
  auto& slot = p.refs[c.container->reference];
  slot.erase(std::remove(slot.begin(), slot.end(), child), slot.end());
  if (slot.empty()) p.refs.erase(c.container->reference);
  c.container.reset();
}

void Model::add_reference(const std::string& node_id, const std::string& reference,
                          const std::string& target) {
  Node& n = node_mut(node_id);
  node(target);  // must exist
  const MetaReference& ref = require_reference(n, reference);
  if (ref.containment)
    throw Error("reference '" + reference + "' is a containment reference; use set_container");
  if (ref.synthetic)
    throw Error("synthetic opposite '" + reference + "' is computed and cannot be written");
  if (!kind_conforms(*mm_, node(target).kind, ref.target))
    throw Error("kind '" + node(target).kind + "' does not conform to slot target '" + ref.target + "'");
  auto& slot = n.refs[reference];
  if (!ref.many && !slot.empty())
    throw Error("single-valued slot '" + n.kind + "." + reference + "' on '" + node_id + "' is already occupied");
  slot.push_back(target);
}

void Model::set_attr(const std::string& node_id, const std::string& name, AttrValue value) {
  Node& n = node_mut(node_id);
  const MetaAttribute* attr = mm_->find_attribute(n.kind, name);
  if (!attr) throw Error("kind '" + n.kind + "' declares no attribute '" + name + "'");
  if (!attr_value_matches(attr->type, value))
    throw Error("attribute '" + name + "' of kind '" + n.kind + "' expects " + attr_type_name(attr->type));
  n.attrs[name] = std::move(value);
}

std::vector<ContainerEdge> Model::container_chain(const std::string& node_id) const {
  std::vector<ContainerEdge> chain;
  const Node* cur = &node(node_id);
  while (cur->container) {
    chain.push_back(*cur->container);
    cur = &node(cur->container->parent);
    if (chain.size() > order_.size())
      throw Error("containment cycle detected while walking ancestors of '" + node_id + "'");
  }
  return chain;
}

std::vector<std::string> Model::targets(const std::string& node_id, const std::string& reference) const {
  const Node& n = node(node_id);
  const MetaReference& ref = require_reference(n, reference);
  if (!ref.synthetic) {
    auto it = n.refs.find(reference);
    return it == n.refs.end() ? std::vector<std::string>{} : it->second;
  }

  // Synthetic opposite of the declared reference ref.target.<ref.opposite>.
  const MetaReference* forward = mm_->find_reference(ref.target, ref.opposite);
  if (!forward) return {};
  if (forward->containment) {
    if (n.container && n.container->reference == forward->name &&
        kind_conforms(*mm_, node(n.container->parent).kind, forward->owner))
      return {n.container->parent};
    return {};
  }
  std::vector<std::string> out;
  for (const auto& id : order_) {
    const Node& m = nodes_.at(id);
    if (!kind_conforms(*mm_, m.kind, forward->owner)) continue;
    auto it = m.refs.find(forward->name);
    if (it == m.refs.end()) continue;
    if (std::find(it->second.begin(), it->second.end(), node_id) != it->second.end())
      out.push_back(id);
  }
  return out;
}

std::vector<std::string> Model::roots() const {
  std::vector<std::string> out;
  for (const auto& id : order_)
    if (!nodes_.at(id).container) out.push_back(id);
  return out;
}

std::vector<Diagnostic> Model::check_conformance() const {
  std::vector<Diagnostic> diags;
  auto report = [&diags](const Node& n, std::string msg) {
    diags.push_back(error("node '" + n.id + "' (" + n.kind + "): " + std::move(msg),
                          n.origin.value_or(SourceLocation{})));
  };

  for (const auto& id : order_) {
    const Node& n = nodes_.at(id);
    const MetaClass* mc = mm_->find_class(n.kind);
    if (!mc) {
      report(n, "undeclared kind");
      continue;
    }
    if (mc->is_abstract) report(n, "kind is abstract");

    for (const auto& [name, value] : n.attrs) {
      const MetaAttribute* attr = mm_->find_attribute(n.kind, name);
      if (!attr)
        report(n, "undeclared attribute '" + name + "'");
      else if (!attr_value_matches(attr->type, value))
        report(n, "attribute '" + name + "' must be of type " + attr_type_name(attr->type));
    }

    for (const auto& [ref_name, slot] : n.refs) {
      const MetaReference* ref = mm_->find_reference(n.kind, ref_name);
      if (!ref) {
        report(n, "undeclared reference slot '" + ref_name + "'");
        continue;
      }
      if (ref->synthetic) {
        report(n, "stored slot for synthetic opposite '" + ref_name + "'");
        continue;
      }
      if (!ref->many && slot.size() > 1)
        report(n, "single-valued slot '" + ref_name + "' holds " + std::to_string(slot.size()) + " targets");
      for (const auto& tgt : slot) {
        auto it = nodes_.find(tgt);
        if (it == nodes_.end()) {
          report(n, "slot '" + ref_name + "' targets missing node '" + tgt + "'");
          continue;
        }
        if (mm_->find_class(it->second.kind) && !kind_conforms(*mm_, it->second.kind, ref->target))
          report(n, "slot '" + ref_name + "' target '" + tgt + "' of kind '" + it->second.kind +
                        "' does not conform to '" + ref->target + "'");
        if (ref->containment) {
          const auto& cont = it->second.container;
          if (!cont || cont->parent != n.id || cont->reference != ref_name)
            report(n, "containment slot '" + ref_name + "' and container of '" + tgt + "' disagree");
        }
      }
    }

    if (n.container) {
      auto it = nodes_.find(n.container->parent);
      if (it == nodes_.end()) {
        report(n, "container parent '" + n.container->parent + "' does not exist");
      } else {
        const MetaReference* ref = mm_->find_reference(it->second.kind, n.container->reference);
        if (!ref || !ref->containment)
          report(n, "container reference '" + n.container->reference + "' is not a containment reference of '" +
                        it->second.kind + "'");
      }
    }
  }

  // Containment must form a forest.
  for (const auto& id : order_) {
    std::set<std::string> seen;
    const Node* cur = &nodes_.at(id);
    bool ok = true;
    while (cur->container && ok) {
      if (!seen.insert(cur->id).second) {
        diags.push_back(error("containment cycle through node '" + id + "'"));
        ok = false;
        break;
      }
      auto it = nodes_.find(cur->container->parent);
      if (it == nodes_.end()) break;
      cur = &it->second;
    }
  }
  return diags;
}

namespace {

json attr_to_json(const AttrValue& v) {
  if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
  return std::get<std::int64_t>(v);
}

}  // namespace

std::string save_model(const Model& m) {
  const MetaModel& mm = m.metamodel();
  json doc;
  doc["metamodel"] = mm.name;
  doc["nodes"] = json::array();
  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    json jn;
    jn["id"] = n.id;
    jn["kind"] = n.kind;
    jn["attrs"] = json::object();
    if (mm.find_class(n.kind)) {
      // Declared order first, then anything undeclared (kept for diagnostics).
      for (const MetaAttribute* attr : mm.all_attributes(n.kind)) {
        auto it = n.attrs.find(attr->name);
        if (it != n.attrs.end()) jn["attrs"][attr->name] = attr_to_json(it->second);
      }
      for (const auto& [name, value] : n.attrs)
        if (!mm.find_attribute(n.kind, name)) jn["attrs"][name] = attr_to_json(value);
    } else {
      for (const auto& [name, value] : n.attrs) jn["attrs"][name] = attr_to_json(value);
    }
    if (n.container)
      jn["container"] = json::array({n.container->parent, n.container->reference});
    else
      jn["container"] = nullptr;
    jn["refs"] = json::object();
    if (mm.find_class(n.kind)) {
      for (const MetaReference* ref : mm.all_references(n.kind)) {
        if (ref->synthetic) continue;
        auto it = n.refs.find(ref->name);
        if (it != n.refs.end() && !it->second.empty()) jn["refs"][ref->name] = it->second;
      }
      for (const auto& [name, slot] : n.refs)
        if (!mm.find_reference(n.kind, name) && !slot.empty()) jn["refs"][name] = slot;
    } else {
      for (const auto& [name, slot] : n.refs)
        if (!slot.empty()) jn["refs"][name] = slot;
    }
    doc["nodes"].push_back(std::move(jn));
  }
  return doc.dump(2) + "\n";
}

Model load_model(const std::string& text, std::shared_ptr<const MetaModel> mm) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("model parse error: ") + e.what());
  }
  if (!doc.is_object()) throw Error("model root must be a JSON object");
  if (!doc.contains("nodes") || !doc["nodes"].is_array())
    throw Error("model root must contain a 'nodes' array");

  Model m(std::move(mm));
  const MetaModel& meta = m.metamodel();

  for (const json& jn : doc["nodes"]) {
    if (!jn.is_object() || !jn.contains("id") || !jn["id"].is_string() || !jn.contains("kind") ||
        !jn["kind"].is_string())
      throw Error("every node needs string 'id' and 'kind'");
    const std::string id = jn["id"].get<std::string>();
    const std::string kind = jn["kind"].get<std::string>();
    if (!meta.find_class(kind))
      throw Error("node '" + id + "' references missing kind '" + kind + "'");
    m.add_node_raw(id, kind);
    Node& n = m.node_mut(id);
    if (jn.contains("attrs")) {
      if (!jn["attrs"].is_object()) throw Error("node '" + id + "': 'attrs' must be an object");
      for (auto it = jn["attrs"].begin(); it != jn["attrs"].end(); ++it) {
        const json& v = it.value();
        if (v.is_string())
          n.attrs[it.key()] = v.get<std::string>();
        else if (v.is_boolean())
          n.attrs[it.key()] = v.get<bool>();
        else if (v.is_number_integer())
          n.attrs[it.key()] = v.get<std::int64_t>();
        else
          throw Error("node '" + id + "': attribute '" + it.key() + "' has unsupported value type " +
                      std::string(v.type_name()));
      }
    }
  }

  // Second pass: containment and reference slots, with synthetic-opposite
  // slots dropped (they are recomputed on demand).
  for (const json& jn : doc["nodes"]) {
    const std::string id = jn["id"].get<std::string>();
    Node& n = m.node_mut(id);
    if (jn.contains("container") && !jn["container"].is_null()) {
      const json& jc = jn["container"];
      if (!jc.is_array() || jc.size() != 2 || !jc[0].is_string() || !jc[1].is_string())
        throw Error("node '" + id + "': 'container' must be [parent, reference] or null");
      n.container = ContainerEdge{jc[0].get<std::string>(), jc[1].get<std::string>()};
      if (!m.has_node(n.container->parent))
        throw Error("node '" + id + "': container parent '" + n.container->parent + "' does not exist");
    }
    if (jn.contains("refs")) {
      if (!jn["refs"].is_object()) throw Error("node '" + id + "': 'refs' must be an object");
      for (auto it = jn["refs"].begin(); it != jn["refs"].end(); ++it) {
        const MetaReference* ref = meta.find_reference(n.kind, it.key());
        if (ref && ref->synthetic) continue;  // tolerated and dropped
        if (!it.value().is_array())
          throw Error("node '" + id + "': slot '" + it.key() + "' must be an array of ids");
        std::vector<std::string> slot;
        for (const json& t : it.value()) {
          if (!t.is_string()) throw Error("node '" + id + "': slot '" + it.key() + "' must hold string ids");
          slot.push_back(t.get<std::string>());
        }
        if (!slot.empty()) n.refs[it.key()] = std::move(slot);
      }
    }
  }
  return m;
}

Model strip_to_metamodel(const Model& m, std::shared_ptr<const MetaModel> target_mm) {
  Model out(target_mm);
  const MetaModel& tm = *target_mm;

  for (const auto& id : m.ids()) {
    const Node& n = m.node(id);
    if (!tm.find_class(n.kind)) continue;
    out.add_node_raw(id, n.kind);
    Node& copy = out.node_mut(id);
    copy.origin = n.origin;
    for (const auto& [name, value] : n.attrs)
      if (tm.find_attribute(n.kind, name)) copy.attrs[name] = value;
  }

  for (const auto& id : out.ids()) {
    const Node& n = m.node(id);
    if (n.container && out.has_node(n.container->parent)) {
      const MetaReference* ref = tm.find_reference(m.node(n.container->parent).kind, n.container->reference);
      if (ref && ref->containment && !ref->synthetic) out.node_mut(id).container = n.container;
    }
  }

  for (const auto& id : out.ids()) {
    const Node& n = m.node(id);
    Node& copy = out.node_mut(id);
    for (const auto& [name, slot] : n.refs) {
      const MetaReference* ref = tm.find_reference(n.kind, name);
      if (!ref || ref->synthetic) continue;
      std::vector<std::string> kept;
      for (const auto& tgt : slot)
        if (out.has_node(tgt)) kept.push_back(tgt);
      // Containment slots only survive when the child kept its container edge.
      if (ref->containment) {
        std::vector<std::string> kept2;
        for (const auto& tgt : kept) {
          const auto& cont = out.node(tgt).container;
          if (cont && cont->parent == id && cont->reference == name) kept2.push_back(tgt);
        }
        kept = std::move(kept2);
      }
      if (!kept.empty()) copy.refs[name] = std::move(kept);
    }
  }
  return out;
}

bool models_equal(const Model& a, const Model& b) {
  if (a.ids() != b.ids()) return false;
  for (const auto& id : a.ids()) {
    const Node& na = a.node(id);
    const Node& nb = b.node(id);
    if (na.kind != nb.kind || na.attrs != nb.attrs || na.container != nb.container ||
        na.refs != nb.refs)
      return false;
  }
  return true;
}

namespace {

bool trees_equal(const Model& a, const std::string& ida, const Model& b, const std::string& idb) {
  const Node& na = a.node(ida);
  const Node& nb = b.node(idb);
  if (na.kind != nb.kind || na.attrs != nb.attrs) return false;
  for (const MetaReference* ref : a.metamodel().all_references(na.kind)) {
    if (!ref->containment || ref->synthetic) continue;
    auto ita = na.refs.find(ref->name);
    auto itb = nb.refs.find(ref->name);
    std::size_t ca = ita == na.refs.end() ? 0 : ita->second.size();
    std::size_t cb = itb == nb.refs.end() ? 0 : itb->second.size();
    if (ca != cb) return false;
    for (std::size_t i = 0; i < ca; ++i)
      if (!trees_equal(a, ita->second[i], b, itb->second[i])) return false;
  }
  return true;
}

}  // namespace

bool models_tree_equal(const Model& a, const Model& b) {
  auto ra = a.roots();
  auto rb = b.roots();
  if (ra.size() != rb.size()) return false;
  for (std::size_t i = 0; i < ra.size(); ++i)
    if (!trees_equal(a, ra[i], b, rb[i])) return false;
  return true;
}

}  // namespace statemine
