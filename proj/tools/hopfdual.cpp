#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hopfdual/session.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report_errors(const std::string& path, const std::vector<hopfdual::session::Diagnostic>& errors) {
  for (const auto& d : errors) std::cerr << path << ":" << d.str() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hopfdual::session;
  CLI::App app{"Exact Hopf algebra duality toolkit"};
  app.require_subcommand(1);

  std::string run_file, json_out, check_file;
  bool verbose = false;
  auto* run = app.add_subcommand("run", "parse a session file and run its tasks");
  run->add_option("session", run_file, "session file")->required()->check(CLI::ExistingFile);
  run->add_option("--json", json_out, "write the JSON report here ('-' for stdout)");
  run->add_flag("--verbose,-v", verbose, "print task artifacts");

  auto* check = app.add_subcommand("check", "parse and validate a session file without running tasks");
  check->add_option("session", check_file, "session file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      const ParseResult r = parse_session(read_file(check_file));
      if (!r.ok()) return report_errors(check_file, r.errors);
      std::cout << check_file << ": " << r.spec->statements.size() << " statements, " << r.spec->objects.size() << " objects, "
                << r.spec->tasks.size() << " tasks\n";
      return 0;
    }
    const ParseResult r = parse_session(read_file(run_file));
    if (!r.ok()) return report_errors(run_file, r.errors);
    const Report rep = run_tasks(*r.spec);
    if (json_out == "-") {
      std::cout << rep.to_json().dump(2) << "\n";
    } else {
      std::cout << rep.text(verbose);
      if (!json_out.empty()) {
        std::ofstream out(json_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + json_out);
        out << rep.to_json().dump(2) << "\n";
      }
    }
    return rep.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "hopfdual: " << e.what() << "\n";
    return 2;
  }
}
