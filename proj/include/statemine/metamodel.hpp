#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "statemine/diagnostics.hpp"

namespace statemine {

enum class AttrType { Text, Boolean, Integer };

const char* attr_type_name(AttrType type);

struct MetaAttribute {
  std::string name;
  AttrType type = AttrType::Text;

  bool operator==(const MetaAttribute&) const = default;
};

struct MetaReference {
  std::string name;
  std::string target;       // kind name
  bool containment = false;
  bool many = false;
  std::string opposite;     // reference name on the target class; empty if none
  bool synthetic = false;   // true when added by augment_opposites
  std::string owner;        // kind declaring this reference (filled on load)

  bool operator==(const MetaReference&) const = default;
};

struct MetaClass {
  std::string name;
  std::string package_name;
  bool is_abstract = false;
  std::vector<std::string> supertypes;
  std::vector<MetaAttribute> attributes;
  std::vector<MetaReference> references;

  bool operator==(const MetaClass&) const = default;
};

struct MetaPackage {
  std::string name;
  std::vector<MetaClass> classes;

  bool operator==(const MetaPackage&) const = default;
};

// Typed schema both the Java syntax graph and the state-machine model conform
// to. Immutable once loaded and augmented; cheap to copy, safe to share.
class MetaModel {
 public:
  std::string name;  // advisory label, not serialized
  std::vector<MetaPackage> packages;

  void rebuild_index();

  const MetaClass* find_class(const std::string& kind) const;
  const MetaClass& require_class(const std::string& kind) const;  // throws Error
  bool declares(const std::string& kind) const { return find_class(kind) != nullptr; }

  // All classes in package/declaration order.
  std::vector<const MetaClass*> all_classes() const;

  // Declared and inherited features, root-most supertype first, each class's
  // own declarations in declaration order. Supertype diamonds are visited once.
  std::vector<const MetaAttribute*> all_attributes(const std::string& kind) const;
  std::vector<const MetaReference*> all_references(const std::string& kind) const;

  const MetaAttribute* find_attribute(const std::string& kind, const std::string& attr) const;
  const MetaReference* find_reference(const std::string& kind, const std::string& ref) const;

  bool operator==(const MetaModel& other) const { return packages == other.packages; }

 private:
  friend bool kind_conforms(const MetaModel&, const std::string&, const std::string&);

  std::map<std::string, std::pair<std::size_t, std::size_t>> index_;  // kind -> (package, class)
  // kind -> itself plus every reachable supertype; filled by rebuild_index.
  std::map<std::string, std::set<std::string>> ancestors_;
};

// Parses and validates the metamodel JSON dialect. Throws Error on malformed
// text or any schema violation (unresolved names, inheritance cycles, ...).
MetaModel load_metamodel(const std::string& text);

// Serializes declared features only; synthetic opposites are never written,
// and an `opposite` key appears only for declared opposite pairs. Stable key
// order, two-space indentation, trailing newline.
std::string save_metamodel(const MetaModel& mm);

// Returns a copy in which every reference lacking an opposite has gained a
// synthetic one on its target class, named `<owner>_<ref>_opposite`.
// Idempotent. Throws Error when a synthetic name collides with a declared
// reference.
MetaModel augment_opposites(const MetaModel& mm);

// True iff `super_kind` is reachable from `sub_kind` via zero or more
// supertype edges. Throws Error on undeclared kinds.
bool kind_conforms(const MetaModel& mm, const std::string& sub_kind, const std::string& super_kind);

// All (container kind, reference name) pairs under which an instance of
// `kind` may be directly contained, in package/class/reference declaration
// order. Synthetic references never qualify (they are non-containment).
std::vector<std::pair<std::string, std::string>> containment_contexts(const MetaModel& mm,
                                                                      const std::string& kind);

// Empty iff every MetaModel/MetaClass/MetaReference invariant holds.
std::vector<Diagnostic> validate_metamodel(const MetaModel& mm);

// Concatenates the packages of `parts` into one metamodel named `name`.
// Validation is the caller's responsibility.
MetaModel merge_metamodels(const std::string& name, const std::vector<const MetaModel*>& parts);

}  // namespace statemine
