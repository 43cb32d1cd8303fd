#pragma once

#include <string>

#include "statemine/extractor.hpp"

namespace statemine {

// DOT digraph of the machine: one node per state, one edge per transition
// labeled "trigger / action".
std::string render_dot(const StateMachineResult& sm);

// Canonical golden-test format; byte-deterministic, two-space indentation,
// fixed key order.
std::string render_json(const Extraction& x);

// One line per state and per transition, after a summary header.
std::string render_text(const StateMachineResult& sm);

}  // namespace statemine
