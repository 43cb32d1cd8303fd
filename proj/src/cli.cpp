#include "statemine/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "statemine/embedded.hpp"
#include "statemine/emit.hpp"
#include "statemine/extractor.hpp"
#include "statemine/java_frontend.hpp"
#include "statemine/model.hpp"

#ifdef _WIN32
#include <io.h>
#define STATEMINE_ISATTY _isatty
#define STATEMINE_FILENO _fileno
#else
#include <unistd.h>
#define STATEMINE_ISATTY isatty
#define STATEMINE_FILENO fileno
#endif

namespace statemine::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNoStateClass = 3;

bool use_color(const std::ostream& err) {
  const char* env = std::getenv("STATEMINE_NO_COLOR");
  if (env && *env) return false;
  return &err == &std::cerr && STATEMINE_ISATTY(STATEMINE_FILENO(stderr));
}

void print_diagnostic(std::ostream& err, const Diagnostic& d, bool color) {
  if (!color) {
    err << d.to_string() << "\n";
    return;
  }
  if (d.location.valid()) err << d.location.to_string() << ": ";
  err << (d.severity == Severity::Warning ? "\033[33mwarning\033[0m: " : "\033[31merror\033[0m: ")
      << d.message << "\n";
}

void print_diagnostics(std::ostream& err, const std::vector<Diagnostic>& diags, bool color) {
  for (const auto& d : diags) print_diagnostic(err, d, color);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& text, const std::string& out_file, std::ostream& out) {
  if (out_file.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(out_file, std::ios::binary);
  if (!f) throw Error("cannot write file '" + out_file + "'");
  f << text;
  if (!f.good()) throw Error("failed while writing '" + out_file + "'");
}

// Files and directories, recursed and sorted by path so the result never
// depends on enumeration order.
std::vector<std::string> collect_java_files(const std::vector<std::string>& paths) {
  std::vector<std::string> files;
  for (const auto& p : paths) {
    fs::path fp(p);
    if (!fs::exists(fp)) throw Error("no such file or directory: '" + p + "'");
    if (fs::is_directory(fp)) {
      for (const auto& entry : fs::recursive_directory_iterator(fp))
        if (entry.is_regular_file() && entry.path().extension() == ".java")
          files.push_back(entry.path().generic_string());
    } else {
      files.push_back(fp.generic_string());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

MetaModel load_metamodel_file(const std::string& path) {
  MetaModel mm = load_metamodel(read_file(path));
  mm.name = fs::path(path).stem().string();
  return mm;
}

struct ExtractArgs {
  std::vector<std::string> paths;
  std::string metamodel_file;
  std::string format = "json";
  std::string out_file;
  bool dedupe = false;
  bool strict = false;
};

int run_extract(const ExtractArgs& args, std::ostream& out, std::ostream& err, bool color) {
  std::shared_ptr<const MetaModel> mm;
  if (args.metamodel_file.empty())
    mm = combined_metamodel();
  else
    mm = combine_with_statemachine(load_metamodel_file(args.metamodel_file));

  std::vector<java::ProgramSource> sources;
  for (const auto& file : collect_java_files(args.paths))
    sources.push_back(java::ProgramSource{file, read_file(file)});

  Model model(mm);
  std::vector<Diagnostic> diags;
  java::parse_program(std::move(sources), model, java::ParseOptions{args.strict}, diags);
  auto resolve_diags = java::resolve_names(model);
  diags.insert(diags.end(), resolve_diags.begin(), resolve_diags.end());

  Extraction x = extract(model, ExtractOptions{args.dedupe});
  x.warnings.insert(x.warnings.begin(), diags.begin(), diags.end());
  print_diagnostics(err, x.warnings, color);

  std::string rendered;
  StateMachineResult empty;
  if (args.format == "json")
    rendered = render_json(x);
  else if (args.format == "dot")
    rendered = render_dot(x.machine ? *x.machine : empty);
  else
    rendered = render_text(x.machine ? *x.machine : empty);
  write_output(rendered, args.out_file, out);

  return x.machine ? kExitOk : kExitNoStateClass;
}

struct GenPlanArgs {
  std::string metamodel_file;
  std::string target;
  std::vector<std::string> collect;
  std::string format = "json";
};

int run_gen_plan(const GenPlanArgs& args, std::ostream& out) {
  std::shared_ptr<const MetaModel> mm;
  if (args.metamodel_file.empty())
    mm = java_metamodel();
  else
    mm = std::make_shared<const MetaModel>(augment_opposites(load_metamodel_file(args.metamodel_file)));

  TraversalPlan plan = generate_plan(*mm, args.target, args.collect);
  out << (args.format == "dot" ? render_plan_dot(plan) : render_plan_json(plan));
  out.flush();
  return kExitOk;
}

struct ParseArgs {
  std::string file;
  std::string format = "json";
};

int run_parse(const ParseArgs& args, std::ostream& out, std::ostream& err, bool color) {
  Model model(java_metamodel());
  std::vector<Diagnostic> diags;
  java::parse_source(args.file, read_file(args.file), model, java::ParseOptions{}, diags);
  print_diagnostics(err, diags, color);
  out << save_model(model);
  out.flush();
  return kExitOk;
}

struct ValidateArgs {
  std::string metamodel_file;
  std::string model_file;
};

int run_validate(const ValidateArgs& args, std::ostream& err, bool color) {
  MetaModel mm = args.metamodel_file.empty()
                     ? load_metamodel(java_subset_mmjson())
                     : load_metamodel_file(args.metamodel_file);
  if (args.model_file.empty()) {
    // load_metamodel already rejects invalid metamodels, so reaching this
    // point means a clean bill; run the validator anyway for its diagnostics.
    auto diags = validate_metamodel(mm);
    print_diagnostics(err, diags, color);
    return diags.empty() ? kExitOk : kExitInputError;
  }
  auto shared = std::make_shared<const MetaModel>(augment_opposites(mm));
  Model model = load_model(read_file(args.model_file), shared);
  auto diags = model.check_conformance();
  print_diagnostics(err, diags, color);
  return diags.empty() ? kExitOk : kExitInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const bool color = use_color(err);

  CLI::App app{"statemine - state machine extraction from convention-following Java"};
  app.require_subcommand(1);

  ExtractArgs extract_args;
  CLI::App* cmd_extract =
      app.add_subcommand("extract", "Parse Java sources and extract the encoded state machine");
  cmd_extract->add_option("paths", extract_args.paths, ".java files or directories")->required();
  cmd_extract->add_option("--metamodel", extract_args.metamodel_file, "metamodel JSON file");
  cmd_extract->add_option("--format", extract_args.format, "output format")
      ->check(CLI::IsMember({"dot", "json", "text"}));
  cmd_extract->add_option("--out", extract_args.out_file, "write output to a file instead of stdout");
  cmd_extract->add_flag("--dedupe", extract_args.dedupe,
                        "merge identical (source,target,trigger,action) transitions");
  cmd_extract->add_flag("--strict", extract_args.strict,
                        "treat unsupported constructs as errors");

  GenPlanArgs gen_plan_args;
  CLI::App* cmd_gen_plan =
      app.add_subcommand("gen-plan", "Derive the owner-traversal plan from a metamodel");
  cmd_gen_plan->add_option("--metamodel", gen_plan_args.metamodel_file, "metamodel JSON file");
  cmd_gen_plan->add_option("--target", gen_plan_args.target, "target kind")->required();
  cmd_gen_plan->add_option("--collect", gen_plan_args.collect, "kinds to collect along the walk")
      ->delimiter(',');
  cmd_gen_plan->add_option("--format", gen_plan_args.format, "output format")
      ->check(CLI::IsMember({"json", "dot"}));

  ParseArgs parse_args;
  CLI::App* cmd_parse = app.add_subcommand("parse", "Dump the syntax-graph model of one file");
  cmd_parse->add_option("file", parse_args.file, ".java file")->required();
  cmd_parse->add_option("--format", parse_args.format, "output format")
      ->check(CLI::IsMember({"json"}));

  ValidateArgs validate_args;
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "Check a metamodel, or a model against a metamodel");
  cmd_validate->add_option("--metamodel", validate_args.metamodel_file, "metamodel JSON file");
  cmd_validate->add_option("model", validate_args.model_file, "model JSON file");

  std::vector<std::string> argv{"statemine"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const auto& a : argv) raw.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(cmd_extract)) return run_extract(extract_args, out, err, color);
    if (app.got_subcommand(cmd_gen_plan)) return run_gen_plan(gen_plan_args, out);
    if (app.got_subcommand(cmd_parse)) return run_parse(parse_args, out, err, color);
    if (app.got_subcommand(cmd_validate)) return run_validate(validate_args, err, color);
  } catch (const Error& e) {
    print_diagnostic(err, e.diagnostic(), color);
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitUsage;
}

}  // namespace statemine::cli
