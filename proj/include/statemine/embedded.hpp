#pragma once

#include <memory>
#include <string>

#include "statemine/metamodel.hpp"

namespace statemine {

// Texts of the shipped metamodels (identical to the files under data/).
const std::string& java_subset_mmjson();
const std::string& statemachine_mmjson();

// Loaded and augmented shipped metamodels, built once.
std::shared_ptr<const MetaModel> java_metamodel();
std::shared_ptr<const MetaModel> statemachine_metamodel();

// Java metamodel + state-machine metamodel + the one declared trace
// association between Class and State, augmented. `java_part` defaults to the
// embedded Java subset.
std::shared_ptr<const MetaModel> combined_metamodel();
std::shared_ptr<const MetaModel> combine_with_statemachine(const MetaModel& java_part);

}  // namespace statemine
