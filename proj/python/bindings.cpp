#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "statemine/embedded.hpp"
#include "statemine/emit.hpp"
#include "statemine/extractor.hpp"
#include "statemine/hotgen.hpp"
#include "statemine/java_frontend.hpp"
#include "statemine/model.hpp"

namespace py = pybind11;
using namespace statemine;

namespace {

std::vector<std::string> to_strings(const std::vector<Diagnostic>& diags) {
  std::vector<std::string> out;
  out.reserve(diags.size());
  for (const auto& d : diags) out.push_back(d.to_string());
  return out;
}

std::shared_ptr<const MetaModel> shared_copy(const MetaModel& mm) {
  return std::make_shared<const MetaModel>(mm);
}

}  // namespace

PYBIND11_MODULE(_statemine, m) {
  m.doc() = "State machine extraction from convention-following Java sources";

  py::register_exception<Error>(m, "StatemineError");

  py::class_<MetaModel>(m, "MetaModel")
      .def_readonly("name", &MetaModel::name)
      .def("kinds",
           [](const MetaModel& mm) {
             std::vector<std::string> out;
             for (const MetaClass* mc : mm.all_classes()) out.push_back(mc->name);
             return out;
           })
      .def("declares", &MetaModel::declares, py::arg("kind"))
      .def("__repr__", [](const MetaModel& mm) {
        std::size_t kinds = mm.all_classes().size();
        return "<MetaModel '" + mm.name + "' with " + std::to_string(kinds) + " kinds>";
      });

  m.def("load_metamodel", [](const std::string& text, const std::string& name) {
          MetaModel mm = load_metamodel(text);
          mm.name = name;
          return mm;
        },
        py::arg("text"), py::arg("name") = "metamodel");
  m.def("save_metamodel", &save_metamodel, py::arg("metamodel"));
  m.def("augment_opposites", &augment_opposites, py::arg("metamodel"));
  m.def("validate_metamodel",
        [](const MetaModel& mm) { return to_strings(validate_metamodel(mm)); },
        py::arg("metamodel"));
  m.def("kind_conforms", &kind_conforms, py::arg("metamodel"), py::arg("sub"), py::arg("super"));
  m.def("containment_contexts", &containment_contexts, py::arg("metamodel"), py::arg("kind"));
  m.def("java_metamodel", [] { return *java_metamodel(); });
  m.def("statemachine_metamodel", [] { return *statemachine_metamodel(); });
  m.def("combined_metamodel", [] { return *combined_metamodel(); });
  m.def("java_subset_mmjson", [] { return java_subset_mmjson(); });
  m.def("statemachine_mmjson", [] { return statemachine_mmjson(); });

  py::class_<Model>(m, "Model")
      .def(py::init([](const MetaModel& mm) { return Model(shared_copy(mm)); }),
           py::arg("metamodel"))
      .def("add_node", &Model::add_node, py::arg("kind"),
           py::arg("attrs") = std::map<std::string, AttrValue>{},
           py::arg("origin") = std::nullopt)
      .def("set_container", &Model::set_container, py::arg("child"), py::arg("parent"),
           py::arg("reference"))
      .def("detach", &Model::detach, py::arg("child"))
      .def("add_reference", &Model::add_reference, py::arg("node"), py::arg("reference"),
           py::arg("target"))
      .def("set_attr", &Model::set_attr, py::arg("node"), py::arg("name"), py::arg("value"))
      .def("container_chain",
           [](const Model& m_, const std::string& id) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& e : m_.container_chain(id)) out.emplace_back(e.parent, e.reference);
             return out;
           },
           py::arg("node"))
      .def("targets", &Model::targets, py::arg("node"), py::arg("reference"))
      .def("ids", &Model::ids)
      .def("roots", &Model::roots)
      .def("kind_of", [](const Model& m_, const std::string& id) { return m_.node(id).kind; },
           py::arg("node"))
      .def("attrs_of", [](const Model& m_, const std::string& id) { return m_.node(id).attrs; },
           py::arg("node"))
      .def("check_conformance",
           [](const Model& m_) { return to_strings(m_.check_conformance()); })
      .def("__len__", &Model::size)
      .def("__repr__", [](const Model& m_) {
        return "<Model of '" + m_.metamodel().name + "' with " + std::to_string(m_.size()) +
               " nodes>";
      });

  m.def("save_model", &save_model, py::arg("model"));
  m.def("load_model",
        [](const std::string& text, const MetaModel& mm) { return load_model(text, shared_copy(mm)); },
        py::arg("text"), py::arg("metamodel"));
  m.def("strip_to_metamodel",
        [](const Model& m_, const MetaModel& mm) { return strip_to_metamodel(m_, shared_copy(mm)); },
        py::arg("model"), py::arg("metamodel"));

  m.def("parse_program",
        [](const std::map<std::string, std::string>& sources, std::optional<MetaModel> mm,
           bool strict, bool resolve) {
          auto shared = mm ? shared_copy(*mm) : combined_metamodel();
          Model model(shared);
          std::vector<java::ProgramSource> files;
          for (const auto& [path, text] : sources) files.push_back({path, text});
          std::vector<Diagnostic> diags;
          java::parse_program(std::move(files), model, java::ParseOptions{strict}, diags);
          if (resolve) {
            auto more = java::resolve_names(model);
            diags.insert(diags.end(), more.begin(), more.end());
          }
          return py::make_tuple(std::move(model), to_strings(diags));
        },
        py::arg("sources"), py::arg("metamodel") = std::nullopt, py::arg("strict") = false,
        py::arg("resolve") = true,
        "Parse a {path: text} mapping into one model (paths sorted first).");
  m.def("resolve_names", [](Model& m_) { return to_strings(java::resolve_names(m_)); },
        py::arg("model"));
  m.def("write_java", &java::write_java, py::arg("model"), py::arg("unit"));

  py::class_<PlanStats>(m, "PlanStats")
      .def_readonly("types_checked", &PlanStats::types_checked)
      .def_readonly("containment_links", &PlanStats::containment_links)
      .def("__repr__", [](const PlanStats& s) {
        return "PlanStats(types_checked=" + std::to_string(s.types_checked) +
               ", containment_links=" + std::to_string(s.containment_links) + ")";
      });

  py::class_<DispatchContext>(m, "DispatchContext")
      .def_readonly("container", &DispatchContext::container)
      .def_readonly("reference", &DispatchContext::reference);

  py::class_<DispatchEntry>(m, "DispatchEntry")
      .def_readonly("kind", &DispatchEntry::kind)
      .def_readonly("contexts", &DispatchEntry::contexts);

  py::class_<TraversalPlan>(m, "TraversalPlan")
      .def_readonly("target", &TraversalPlan::target)
      .def_readonly("collect", &TraversalPlan::collect)
      .def_readonly("entries", &TraversalPlan::entries)
      .def_readonly("stats", &TraversalPlan::stats)
      .def("__repr__", [](const TraversalPlan& p) {
        return "<TraversalPlan target='" + p.target + "' entries=" +
               std::to_string(p.entries.size()) + ">";
      });

  py::class_<OwnerResult>(m, "OwnerResult")
      .def_readonly("owner", &OwnerResult::owner)
      .def_readonly("visited_depth", &OwnerResult::visited_depth)
      .def_property_readonly("collected",
                             [](const OwnerResult& r) {
                               std::map<std::string, std::optional<std::string>> out;
                               for (const auto& [kind, id] : r.collected) out[kind] = id;
                               return out;
                             });

  m.def("generate_plan", &generate_plan, py::arg("metamodel"), py::arg("target"),
        py::arg("collect") = std::vector<std::string>{});
  m.def("find_owner", &find_owner, py::arg("plan"), py::arg("model"), py::arg("node"));
  m.def("find_owner_oracle", &find_owner_oracle, py::arg("model"), py::arg("node"),
        py::arg("target"), py::arg("collect") = std::vector<std::string>{});
  m.def("render_plan_dot", &render_plan_dot, py::arg("plan"));
  m.def("render_plan_json", &render_plan_json, py::arg("plan"));

  py::class_<State>(m, "State")
      .def_readonly("name", &State::name)
      .def_readonly("origin_class", &State::origin_class)
      .def("__repr__", [](const State& s) { return "State(" + s.name + ")"; });

  py::class_<Transition>(m, "Transition")
      .def_readonly("source", &Transition::source)
      .def_readonly("target", &Transition::target)
      .def_readonly("trigger", &Transition::trigger)
      .def_readonly("action", &Transition::action)
      .def_readonly("site", &Transition::site)
      .def("__repr__", [](const Transition& t) {
        return "Transition(" + t.source + " --" + t.trigger + "/" + t.action + "--> " + t.target + ")";
      });

  py::class_<TraceLink>(m, "TraceLink")
      .def_readonly("class_id", &TraceLink::class_id)
      .def_readonly("state_name", &TraceLink::state_name);

  py::class_<StateMachineResult>(m, "StateMachineResult")
      .def_readonly("states", &StateMachineResult::states)
      .def_readonly("transitions", &StateMachineResult::transitions);

  py::class_<Extraction>(m, "Extraction")
      .def_readonly("machine", &Extraction::machine)
      .def_readonly("traces", &Extraction::traces)
      .def_property_readonly("warnings",
                             [](const Extraction& x) { return to_strings(x.warnings); });

  m.def("extract",
        [](const Model& m_, bool dedupe) { return extract(m_, ExtractOptions{dedupe}); },
        py::arg("model"), py::arg("dedupe") = false);
  m.def("materialize", &materialize, py::arg("model"), py::arg("extraction"));

  m.def("render_dot", &render_dot, py::arg("machine"));
  m.def("render_json", &render_json, py::arg("extraction"));
  m.def("render_text", &render_text, py::arg("machine"));
}
