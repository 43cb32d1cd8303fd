#include "statemine/metamodel.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace statemine {

using json = nlohmann::ordered_json;

const char* attr_type_name(AttrType type) {
  switch (type) {
    case AttrType::Text: return "text";
    case AttrType::Boolean: return "boolean";
    case AttrType::Integer: return "integer";
  }
  return "text";
}

void MetaModel::rebuild_index() {
  index_.clear();
  for (std::size_t p = 0; p < packages.size(); ++p) {
    auto& pkg = packages[p];
    for (std::size_t c = 0; c < pkg.classes.size(); ++c) {
      pkg.classes[c].package_name = pkg.name;
      index_.emplace(pkg.classes[c].name, std::make_pair(p, c));
    }
  }
  // Ancestor closures; the visited set keeps this terminating even on
  // not-yet-validated cyclic input.
  ancestors_.clear();
  for (const auto& pkg : packages) {
    for (const auto& mc : pkg.classes) {
      std::set<std::string> closure;
      std::vector<std::string> frontier{mc.name};
      while (!frontier.empty()) {
        std::string kind = std::move(frontier.back());
        frontier.pop_back();
        if (!closure.insert(kind).second) continue;
        if (const MetaClass* cur = find_class(kind))
          for (const auto& sup : cur->supertypes) frontier.push_back(sup);
      }
      ancestors_.emplace(mc.name, std::move(closure));
    }
  }
}

const MetaClass* MetaModel::find_class(const std::string& kind) const {
  auto it = index_.find(kind);
  if (it == index_.end()) return nullptr;
  return &packages[it->second.first].classes[it->second.second];
}

const MetaClass& MetaModel::require_class(const std::string& kind) const {
  const MetaClass* mc = find_class(kind);
  if (!mc) throw Error("undeclared kind '" + kind + "'");
  return *mc;
}

std::vector<const MetaClass*> MetaModel::all_classes() const {
  std::vector<const MetaClass*> out;
  for (const auto& pkg : packages)
    for (const auto& mc : pkg.classes) out.push_back(&mc);
  return out;
}

namespace {

// Root-most-first feature order: supertypes before the class itself, each
// visited once even through diamonds.
void linearize(const MetaModel& mm, const std::string& kind, std::set<std::string>& seen,
               std::vector<const MetaClass*>& out) {
  if (!seen.insert(kind).second) return;
  const MetaClass& mc = mm.require_class(kind);
  for (const auto& sup : mc.supertypes) linearize(mm, sup, seen, out);
  out.push_back(&mc);
}

std::vector<const MetaClass*> linearized(const MetaModel& mm, const std::string& kind) {
  std::set<std::string> seen;
  std::vector<const MetaClass*> out;
  linearize(mm, kind, seen, out);
  return out;
}

}  // namespace

std::vector<const MetaAttribute*> MetaModel::all_attributes(const std::string& kind) const {
  std::vector<const MetaAttribute*> out;
  for (const MetaClass* mc : linearized(*this, kind))
    for (const auto& attr : mc->attributes) out.push_back(&attr);
  return out;
}

std::vector<const MetaReference*> MetaModel::all_references(const std::string& kind) const {
  std::vector<const MetaReference*> out;
  for (const MetaClass* mc : linearized(*this, kind))
    for (const auto& ref : mc->references) out.push_back(&ref);
  return out;
}

const MetaAttribute* MetaModel::find_attribute(const std::string& kind, const std::string& attr) const {
  for (const MetaAttribute* a : all_attributes(kind))
    if (a->name == attr) return a;
  return nullptr;
}

const MetaReference* MetaModel::find_reference(const std::string& kind, const std::string& ref) const {
  for (const MetaReference* r : all_references(kind))
    if (r->name == ref) return r;
  return nullptr;
}

namespace {

std::string json_type_name(const json& v) { return v.type_name(); }

const json& expect(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error("missing key '" + std::string(key) + "' in " + where);
  return *it;
}

std::string expect_string(const json& obj, const char* key, const std::string& where) {
  const json& v = expect(obj, key, where);
  if (!v.is_string()) throw Error("key '" + std::string(key) + "' in " + where + " must be a string, got " + json_type_name(v));
  return v.get<std::string>();
}

bool expect_bool(const json& obj, const char* key, const std::string& where) {
  const json& v = expect(obj, key, where);
  if (!v.is_boolean()) throw Error("key '" + std::string(key) + "' in " + where + " must be a boolean, got " + json_type_name(v));
  return v.get<bool>();
}

const json& expect_array(const json& obj, const char* key, const std::string& where) {
  const json& v = expect(obj, key, where);
  if (!v.is_array()) throw Error("key '" + std::string(key) + "' in " + where + " must be an array, got " + json_type_name(v));
  return v;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) { ok = true; break; }
    if (!ok) throw Error("unexpected key '" + it.key() + "' in " + where);
  }
}

AttrType parse_attr_type(const std::string& s, const std::string& where) {
  if (s == "text") return AttrType::Text;
  if (s == "boolean") return AttrType::Boolean;
  if (s == "integer") return AttrType::Integer;
  throw Error("unknown attribute type '" + s + "' in " + where + " (expected text|boolean|integer)");
}

}  // namespace

MetaModel load_metamodel(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("metamodel parse error: ") + e.what());
  }
  if (!doc.is_object()) throw Error("metamodel root must be a JSON object");
  reject_unknown_keys(doc, {"packages"}, "metamodel root");

  MetaModel mm;
  for (const json& jpkg : expect_array(doc, "packages", "metamodel root")) {
    MetaPackage pkg;
    pkg.name = expect_string(jpkg, "name", "package");
    reject_unknown_keys(jpkg, {"name", "classes"}, "package '" + pkg.name + "'");
    for (const json& jcls : expect_array(jpkg, "classes", "package '" + pkg.name + "'")) {
      MetaClass mc;
      mc.name = expect_string(jcls, "name", "class in package '" + pkg.name + "'");
      const std::string where = "class '" + mc.name + "'";
      reject_unknown_keys(jcls, {"name", "abstract", "supertypes", "attributes", "references"}, where);
      mc.package_name = pkg.name;
      mc.is_abstract = expect_bool(jcls, "abstract", where);
      for (const json& s : expect_array(jcls, "supertypes", where)) {
        if (!s.is_string()) throw Error("supertype of " + where + " must be a string");
        mc.supertypes.push_back(s.get<std::string>());
      }
      for (const json& jattr : expect_array(jcls, "attributes", where)) {
        MetaAttribute attr;
        attr.name = expect_string(jattr, "name", "attribute of " + where);
        reject_unknown_keys(jattr, {"name", "type"}, "attribute '" + attr.name + "' of " + where);
        attr.type = parse_attr_type(expect_string(jattr, "type", "attribute '" + attr.name + "'"),
                                    "attribute '" + attr.name + "' of " + where);
        mc.attributes.push_back(std::move(attr));
      }
      for (const json& jref : expect_array(jcls, "references", where)) {
        MetaReference ref;
        ref.name = expect_string(jref, "name", "reference of " + where);
        const std::string rwhere = "reference '" + ref.name + "' of " + where;
        reject_unknown_keys(jref, {"name", "target", "containment", "many", "opposite"}, rwhere);
        ref.target = expect_string(jref, "target", rwhere);
        ref.containment = expect_bool(jref, "containment", rwhere);
        ref.many = expect_bool(jref, "many", rwhere);
        if (jref.contains("opposite")) {
          const json& opp = jref["opposite"];
          if (!opp.is_string()) throw Error("key 'opposite' in " + rwhere + " must be a string");
          ref.opposite = opp.get<std::string>();
        }
        ref.owner = mc.name;
        mc.references.push_back(std::move(ref));
      }
      pkg.classes.push_back(std::move(mc));
    }
    mm.packages.push_back(std::move(pkg));
  }
  mm.rebuild_index();

  auto diags = validate_metamodel(mm);
  if (!diags.empty()) {
    std::ostringstream os;
    os << "invalid metamodel:";
    for (const auto& d : diags) os << "\n  " << d.to_string();
    throw Error(os.str());
  }
  return mm;
}

std::string save_metamodel(const MetaModel& mm) {
  json doc;
  doc["packages"] = json::array();
  for (const auto& pkg : mm.packages) {
    json jpkg;
    jpkg["name"] = pkg.name;
    jpkg["classes"] = json::array();
    for (const auto& mc : pkg.classes) {
      json jcls;
      jcls["name"] = mc.name;
      jcls["abstract"] = mc.is_abstract;
      jcls["supertypes"] = mc.supertypes;
      jcls["attributes"] = json::array();
      for (const auto& attr : mc.attributes) {
        json ja;
        ja["name"] = attr.name;
        ja["type"] = attr_type_name(attr.type);
        jcls["attributes"].push_back(std::move(ja));
      }
      jcls["references"] = json::array();
      for (const auto& ref : mc.references) {
        if (ref.synthetic) continue;
        json jr;
        jr["name"] = ref.name;
        jr["target"] = ref.target;
        jr["containment"] = ref.containment;
        jr["many"] = ref.many;
        if (!ref.opposite.empty()) {
          // Synthetic opposites are not written, so a pointer to one must not
          // be either.
          const MetaClass* tgt = mm.find_class(ref.target);
          const MetaReference* opp = nullptr;
          if (tgt)
            for (const auto& r : tgt->references)
              if (r.name == ref.opposite) { opp = &r; break; }
          if (opp && !opp->synthetic) jr["opposite"] = ref.opposite;
        }
        jcls["references"].push_back(std::move(jr));
      }
      jpkg["classes"].push_back(std::move(jcls));
    }
    doc["packages"].push_back(std::move(jpkg));
  }
  return doc.dump(2) + "\n";
}

MetaModel augment_opposites(const MetaModel& mm) {
  MetaModel out = mm;
  out.rebuild_index();

  // Names already taken per class, including what this pass adds.
  auto taken = [&out](const std::string& kind, const std::string& name) -> const MetaReference* {
    for (const MetaReference* r : out.all_references(kind))
      if (r->name == name) return r;
    return nullptr;
  };

  for (auto& pkg : out.packages) {
    for (auto& mc : pkg.classes) {
      for (std::size_t i = 0; i < mc.references.size(); ++i) {
        // Index-based loop: adding an opposite to this same class may
        // reallocate mc.references.
        if (mc.references[i].synthetic || !mc.references[i].opposite.empty()) continue;
        const std::string ref_name = mc.references[i].name;
        const std::string target = mc.references[i].target;
        const bool containment = mc.references[i].containment;
        const std::string synth_name = mc.name + "_" + ref_name + "_opposite";

        if (const MetaReference* clash = taken(target, synth_name)) {
          if (!clash->synthetic)
            throw Error("synthetic opposite '" + synth_name + "' for reference '" + mc.name + "." +
                        ref_name + "' collides with declared reference '" + clash->owner + "." +
                        clash->name + "'");
          throw Error("synthetic opposite name '" + synth_name + "' already taken on '" + target + "'");
        }

        MetaReference synth;
        synth.name = synth_name;
        synth.target = mc.name;
        synth.containment = false;
        synth.many = !containment;  // a containment reference's opposite is single-valued
        synth.opposite = ref_name;
        synth.synthetic = true;

        auto loc = out.find_class(target);
        if (!loc) throw Error("reference '" + mc.name + "." + ref_name + "' targets undeclared kind '" + target + "'");
        // find_class returns const; locate the mutable class.
        for (auto& p2 : out.packages)
          for (auto& c2 : p2.classes)
            if (c2.name == target) {
              synth.owner = c2.name;
              c2.references.push_back(synth);
            }
        mc.references[i].opposite = synth_name;
      }
    }
  }
  out.rebuild_index();
  return out;
}

bool kind_conforms(const MetaModel& mm, const std::string& sub_kind, const std::string& super_kind) {
  mm.require_class(super_kind);
  auto it = mm.ancestors_.find(sub_kind);
  if (it == mm.ancestors_.end()) {
    mm.require_class(sub_kind);  // throws; an indexed metamodel always has the closure
    return false;
  }
  return it->second.count(super_kind) != 0;
}

std::vector<std::pair<std::string, std::string>> containment_contexts(const MetaModel& mm,
                                                                      const std::string& kind) {
  mm.require_class(kind);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& pkg : mm.packages)
    for (const auto& mc : pkg.classes)
      for (const auto& ref : mc.references)
        if (ref.containment && !ref.synthetic && kind_conforms(mm, kind, ref.target))
          out.emplace_back(mc.name, ref.name);
  return out;
}

namespace {

bool inheritance_cycle_from(const MetaModel& mm, const std::string& start) {
  // DFS with a path set; unknown supertypes are someone else's diagnostic.
  std::set<std::string> on_path;
  bool cycle = false;
  auto walk = [&](auto&& self, const std::string& kind) -> void {
    if (cycle) return;
    if (!on_path.insert(kind).second) {
      cycle = true;
      return;
    }
    if (const MetaClass* mc = mm.find_class(kind))
      for (const auto& sup : mc->supertypes)
        if (mm.find_class(sup)) self(self, sup);
    on_path.erase(kind);
  };
  walk(walk, start);
  return cycle;
}

}  // namespace

std::vector<Diagnostic> validate_metamodel(const MetaModel& mm) {
  std::vector<Diagnostic> diags;
  auto report = [&diags](std::string msg) { diags.push_back(error(std::move(msg))); };

  // Global kind-name uniqueness.
  std::map<std::string, std::string> kind_to_pkg;
  for (const auto& pkg : mm.packages)
    for (const auto& mc : pkg.classes) {
      auto [it, fresh] = kind_to_pkg.emplace(mc.name, pkg.name);
      if (!fresh)
        report("kind '" + mc.name + "' declared in both package '" + it->second + "' and package '" +
               pkg.name + "'");
    }

  for (const auto& pkg : mm.packages) {
    for (const auto& mc : pkg.classes) {
      const std::string where = "class '" + mc.name + "'";
      for (const auto& sup : mc.supertypes)
        if (!mm.find_class(sup)) report(where + ": unresolved supertype '" + sup + "'");
      for (const auto& ref : mc.references)
        if (!mm.find_class(ref.target))
          report(where + ": reference '" + ref.name + "' targets unresolved kind '" + ref.target + "'");
      if (inheritance_cycle_from(mm, mc.name)) report("inheritance cycle through '" + mc.name + "'");
    }
  }

  // Feature checks need resolvable, acyclic hierarchies.
  if (!diags.empty()) return diags;

  for (const auto& pkg : mm.packages) {
    for (const auto& mc : pkg.classes) {
      const std::string where = "class '" + mc.name + "'";

      std::map<std::string, const MetaAttribute*> attr_names;
      for (const MetaAttribute* a : mm.all_attributes(mc.name)) {
        auto [it, fresh] = attr_names.emplace(a->name, a);
        if (!fresh && it->second != a)
          report(where + ": duplicate attribute name '" + a->name + "' (including inherited)");
      }

      std::map<std::string, const MetaReference*> ref_names;
      for (const MetaReference* r : mm.all_references(mc.name)) {
        auto [it, fresh] = ref_names.emplace(r->name, r);
        if (!fresh && it->second != r)
          report(where + ": duplicate reference name '" + r->name + "' (including inherited, declared on '" +
                 it->second->owner + "' and '" + r->owner + "')");
      }

      for (const auto& ref : mc.references) {
        if (ref.opposite.empty()) continue;
        const MetaClass& tgt = mm.require_class(ref.target);
        const MetaReference* opp = nullptr;
        for (const auto& r : tgt.references)
          if (r.name == ref.opposite) { opp = &r; break; }
        if (!opp) {
          report(where + ": reference '" + ref.name + "' names missing opposite '" + ref.target + "." +
                 ref.opposite + "'");
          continue;
        }
        if (opp->opposite != ref.name || opp->target != mc.name)
          report(where + ": opposite of reference '" + ref.name + "' does not point back (found '" +
                 ref.target + "." + opp->name + "' -> '" + opp->target + "." + opp->opposite + "')");
        if (ref.containment && (opp->containment || opp->many))
          report(where + ": containment reference '" + ref.name +
                 "' has an opposite that is containment or many-valued");
      }
    }
  }
  return diags;
}

MetaModel merge_metamodels(const std::string& name, const std::vector<const MetaModel*>& parts) {
  MetaModel out;
  out.name = name;
  for (const MetaModel* part : parts)
    for (const auto& pkg : part->packages) out.packages.push_back(pkg);
  out.rebuild_index();
  return out;
}

}  // namespace statemine
