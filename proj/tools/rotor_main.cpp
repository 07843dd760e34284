#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rotor/catalog.hpp"
#include "rotor/errors.hpp"
#include "rotor/parallel.hpp"
#include "rotor/scenario.hpp"

namespace {

struct Command {
  const char* name;
  const char* type;  // analysis type filter; empty runs everything
  const char* help;
};

const Command kCommands[] = {
    {"classify", "classify", "classify the mapping classes of a group"},
    {"rotate", "rotation-set", "estimate rotation sets and rotation vectors"},
    {"measure", "invariant-measure", "build group-invariant measures by averaging"},
    {"fix", "fixed-points", "locate fixed points and check the Franks criterion"},
    {"rotev", "rotev", "check the rotation pushforward identity"},
    {"klein", "klein", "sigma-equivariance and the reduced rotation vector"},
    {"run", "", "run every analysis in a scenario"},
};

int write_examples(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& e : rotor::example_scenarios()) {
    const auto path = dir / e.file;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << path.string() << '\n';
      return 1;
    }
    out << e.text;
    std::cout << path.string() << "  " << e.description << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotor: rotation sets, invariant measures and fixed points of torus homeomorphism groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rotor 1.0.0");

  std::string scenario;
  std::string out = "rotor_out";
  unsigned threads = 0;
  std::vector<std::int64_t> ids;
  std::vector<std::pair<CLI::App*, const Command*>> runs;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "worker threads (default: hardware concurrency)")->check(CLI::Range(1u, 1024u));
    sub->add_option("--out", out, "directory for reports and tables")->capture_default_str();
  };
  for (const auto& c : kCommands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
    common(sub);
    runs.push_back({sub, &c});
  }
  auto* verify = app.add_subcommand("verify", "run the verification suite, or the analyses of a scenario");
  verify->add_option("scenario", scenario, "scenario file; without one the built-in suite runs")->check(CLI::ExistingFile);
  verify->add_option("--criteria", ids, "criterion numbers to run (default: all)");
  common(verify);

  std::string examples_dir = "scenarios";
  auto* examples = app.add_subcommand("examples", "write the example scenarios");
  examples->add_option("dir", examples_dir, "target directory")->capture_default_str();
  examples->add_option("--out", examples_dir, "target directory");

  auto* catalog = app.add_subcommand("catalog", "list the built-in example maps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (threads > 0) rotor::set_threads(threads);
  try {
    if (*examples) return write_examples(examples_dir);
    if (*catalog) {
      for (const auto& e : rotor::catalog::entries()) std::cout << e.name << "  " << e.description << '\n';
      return 0;
    }
    if (*verify) {
      if (scenario.empty()) return rotor::run_verify(ids, out, "verify.json", std::cout);
      return rotor::run_scenario(rotor::Scenario::load(scenario), "verify", out, std::cout);
    }
    for (const auto& [sub, cmd] : runs) {
      if (*sub) return rotor::run_scenario(rotor::Scenario::load(scenario), cmd->type, out, std::cout);
    }
  } catch (const rotor::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
