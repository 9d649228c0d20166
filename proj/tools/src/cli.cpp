#include "spinecert/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "spinecert/bundle.hpp"
#include "spinecert/error.hpp"
#include "spinecert/format.hpp"
#include "spinecert/homology.hpp"
#include "spinecert/pipeline.hpp"
#include "spinecert/seifert.hpp"
#include "spinecert/topology.hpp"

namespace spinecert::cli {
namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return os.str();
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f || !(f << text)) throw IoError("cannot write '" + cfg.out + "'");
}

std::vector<int> int_list(const std::string& s, const char* flag) {
  std::vector<int> v;
  if (s.empty()) return v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + " expects comma-separated integers, got '" + s + "'");
    }
  }
  return v;
}

// 1-based loop ids on the command line
PlanOptions plan_options(const RunConfig& cfg) {
  PlanOptions o;
  o.order = int_list(cfg.order, "--order");
  o.basepoints = int_list(cfg.basepoints, "--basepoint");
  return o;
}

Diagram load_spine(const std::string& path) {
  Diagram d = parse_diagram(read_file(path));
  if (!d.is_spine()) throw UsageError("'" + path + "' is a link file; this subcommand needs a spine");
  auto report = validate(d);
  if (!report.ok()) {
    std::string msg = "'" + path + "' is not a valid spine:";
    for (const auto& e : report.entries) msg += "\n  " + e;
    throw DiagramError(msg);
  }
  return d;
}

std::string validate_one(const std::string& path, int& code) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& e) {
    code = kUsage;
    return path + ": " + e.what() + "\n";
  }
  try {
    Diagram d = parse_diagram(text);
    auto r = validate(d);
    code = r.ok() ? kPass : kFail;
    return write_validation_line(path, r);
  } catch (const ParseError& e) {
    code = kFail;
    return path + ": " + e.what() + "\n";
  } catch (const Error& e) {
    code = kFail;
    return path + ": " + e.what() + "\n";
  }
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const std::size_t n = cfg.inputs.size();
  std::vector<std::string> reports(n);
  std::vector<int> codes(n, kPass);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) reports[i] = validate_one(cfg.inputs[i], codes[i]);
  };
  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& r : reports) out << r;
  return *std::max_element(codes.begin(), codes.end());
}

int cmd_surface(const RunConfig& cfg, std::ostream& out) {
  Diagram d = load_spine(cfg.inputs.front());
  emit(cfg, write_surface_report(spine_seifert_system(d)), out);
  return kPass;
}

int cmd_linking(const RunConfig& cfg, std::ostream& out) {
  Diagram d = parse_diagram(read_file(cfg.inputs.front()));
  auto report = validate(d);
  if (!report.ok()) throw DiagramError("'" + cfg.inputs.front() + "' is not valid: " + report.entries.front());
  Diagram link = d.is_spine() ? loop_sublink(d) : d;
  emit(cfg, write_linking_report(linking_table(link)), out);
  return kPass;
}

int cmd_unknot(const RunConfig& cfg, std::ostream& out) {
  Diagram d = load_spine(cfg.inputs.front());
  TheoremMode mode = cfg.mode == "part2" ? TheoremMode::part2 : TheoremMode::part1;
  CertificateBundle b;
  try {
    b = run_theorem_main(d, mode, plan_options(cfg));
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  emit(cfg, write_bundle(b), out);
  return b.pass() ? kPass : kFail;
}

int cmd_dualize(const RunConfig& cfg, std::ostream& out) {
  Diagram d = load_spine(cfg.inputs.front());
  DualizeResult r;
  try {
    r = heegaard_dualize(d, plan_options(cfg));
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  emit(cfg, write_dualize(r), out);
  return r.delta.pass && verify_reflexive(r.run.link).valid ? kPass : kFail;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  std::string text = read_file(cfg.inputs.front());
  std::optional<Diagram> input;
  if (!cfg.input_diagram.empty()) input = load_spine(cfg.input_diagram);
  auto rep = certify_bundle(text, input);
  emit(cfg, write_certify_report(rep), out);
  return rep.pass() ? kPass : kFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Certificates for unknotting handcuff-graph spines by 1/n surgery", "spinecert"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "spinecert 0.1.0");

  auto* validate_cmd = app.add_subcommand("validate", "Check diagram files and report violated invariants");
  validate_cmd->add_option("files", cfg.inputs, "Diagram files")->required();
  validate_cmd->add_option("--jobs,-j", cfg.jobs, "Validate files in parallel")->check(CLI::PositiveNumber);

  auto* surface_cmd = app.add_subcommand("surface", "Seifert surface system of a spine");
  auto* linking_cmd = app.add_subcommand("linking", "Pairwise linking numbers of loops or link components");
  auto* unknot_cmd = app.add_subcommand("unknot", "Unknot a spine and write a certificate bundle");
  auto* dualize_cmd = app.add_subcommand("dualize", "Surgery link and dual curves for the disk system");
  auto* certify_cmd = app.add_subcommand("certify", "Re-check a certificate bundle");

  for (auto* c : {surface_cmd, linking_cmd, unknot_cmd, dualize_cmd})
    c->add_option("file", cfg.inputs, "Diagram file")->required()->expected(1);
  certify_cmd->add_option("bundle", cfg.inputs, "Bundle file")->required()->expected(1);
  certify_cmd->add_option("--input", cfg.input_diagram, "Spine the bundle must have been produced from");
  unknot_cmd->add_option("--mode", cfg.mode, "part1 (null-homologous) or part2 (completely)")
      ->check(CLI::IsMember({"part1", "part2"}));
  for (auto* c : {unknot_cmd, dualize_cmd}) {
    c->add_option("--order", cfg.order, "Loop traversal order, e.g. 2,1");
    c->add_option("--basepoint", cfg.basepoints, "Per-loop start offsets, e.g. 0,3");
  }
  for (auto* c : {surface_cmd, linking_cmd, unknot_cmd, dualize_cmd, certify_cmd})
    c->add_option("--out,-o", cfg.out, "Write output to a file");
  app.add_flag("--verbose,-v", cfg.verbose, "Report exception details");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << "spinecert 0.1.0\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "spinecert: " << e.what() << '\n';
    return kUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (cfg.subcommand == "validate") return cmd_validate(cfg, out);
    if (cfg.subcommand == "surface") return cmd_surface(cfg, out);
    if (cfg.subcommand == "linking") return cmd_linking(cfg, out);
    if (cfg.subcommand == "unknot") return cmd_unknot(cfg, out);
    if (cfg.subcommand == "dualize") return cmd_dualize(cfg, out);
    return cmd_certify(cfg, out);
  } catch (const IoError& e) {
    err << "spinecert: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "spinecert: " << e.what() << '\n';
    return kUsage;
  } catch (const Refusal& e) {
    out << "refusal: " << e.what() << '\n';
    return kFail;
  } catch (const ParseError& e) {
    err << "spinecert: " << cfg.inputs.front() << ':' << e.line() << ':' << e.column() << ": " << e.what() << '\n';
    return kFail;
  } catch (const Error& e) {
    err << "spinecert: " << e.what() << '\n';
    return kFail;
  }
}

}  // namespace spinecert::cli
