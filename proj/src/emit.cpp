#include "statemine/emit.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace statemine {

using json = nlohmann::ordered_json;

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

std::string render_dot(const StateMachineResult& sm) {
  if (sm.states.empty() && sm.transitions.empty()) return "digraph statemachine {}\n";
  std::string out = "digraph statemachine {\n";
  for (const auto& s : sm.states)
    out += "  " + dot_quoted(s.name) + " [label=" + dot_quoted(s.name) + "];\n";
  for (const auto& t : sm.transitions)
    out += "  " + dot_quoted(t.source) + " -> " + dot_quoted(t.target) +
           " [label=" + dot_quoted(t.trigger + " / " + t.action) + "];\n";
  out += "}\n";
  return out;
}

std::string render_json(const Extraction& x) {
  json doc;
  if (x.machine) {
    json jm;
    jm["states"] = json::array();
    for (const auto& s : x.machine->states) {
      json js;
      js["name"] = s.name;
      jm["states"].push_back(std::move(js));
    }
    jm["transitions"] = json::array();
    for (const auto& t : x.machine->transitions) {
      json jt;
      jt["source"] = t.source;
      jt["target"] = t.target;
      jt["trigger"] = t.trigger;
      jt["action"] = t.action;
      jm["transitions"].push_back(std::move(jt));
    }
    doc["stateMachine"] = std::move(jm);
  } else {
    doc["stateMachine"] = nullptr;
  }
  doc["traces"] = json::array();
  for (const auto& trace : x.traces) {
    json jt;
    jt["class"] = trace.class_id;
    jt["state"] = trace.state_name;
    doc["traces"].push_back(std::move(jt));
  }
  doc["warnings"] = json::array();
  for (const auto& w : x.warnings) doc["warnings"].push_back(w.to_string());
  return doc.dump(2) + "\n";
}

std::string render_text(const StateMachineResult& sm) {
  std::ostringstream os;
  os << "statemachine: " << sm.states.size() << " states, " << sm.transitions.size()
     << " transitions\n";
  for (const auto& s : sm.states) os << "state " << s.name << "\n";
  for (const auto& t : sm.transitions)
    os << t.source << " --" << t.trigger << "/" << t.action << "--> " << t.target << "\n";
  return os.str();
}

}  // namespace statemine
