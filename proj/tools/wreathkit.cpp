#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace wreathkit;

struct Invocation {
  std::vector<std::string> instances;
  std::string out;
  cli::Options opt;
};

int emit(const Invocation& inv, const std::string& artifact) {
  if (inv.out.empty()) {
    std::cout << artifact;
    return 0;
  }
  std::ofstream f(inv.out, std::ios::binary);
  f << artifact;
  if (!f) {
    std::cerr << "wreathkit: cannot write " << inv.out << '\n';
    return 2;
  }
  return 0;
}

Instance load(const std::string& path) {
  try {
    return parse_instance(path);
  } catch (const Error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wreath products of groups: growth, Cayley balls, walls, lengths, radicals, Coxeter probes"};
  app.require_subcommand(1);
  Invocation inv;

  auto common = [&](CLI::App* sub, std::size_t instances) {
    if (instances) sub->add_option("instance", inv.instances, "Instance file(s)")->required()->expected(static_cast<int>(instances));
    sub->add_option("--out", inv.out, "Write the result here instead of stdout");
    sub->add_option("--jobs", inv.opt.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--budget-bytes", inv.opt.budget_bytes, "Memory cap for enumeration (default: WREATHKIT_BUDGET_MB, else 2 GiB)");
    return sub;
  };
  auto* growth = common(app.add_subcommand("growth", "Ball and sphere sizes as CSV"), 1);
  growth->add_option("--radius", inv.opt.radius, "Largest radius")->check(CLI::Range(0u, 10000u));
  auto* iso = common(app.add_subcommand("iso", "Isomorphism of two Cayley balls, with witness"), 2);
  iso->add_option("--radius", inv.opt.radius, "Ball radius")->check(CLI::Range(0u, 64u));
  iso->add_flag("--unrooted", inv.opt.unrooted, "Do not fix the identity");
  common(app.add_subcommand("walls-check", "Metric, l1, CND and cut-bound checks of a walling"), 1);
  common(app.add_subcommand("pw-lengths", "Lengths ell0, ell and ell' of a commensurating action"), 1);
  common(app.add_subcommand("radical", "Predicted radicals and conjugacy-closure verdicts"), 1);
  auto* cox = common(app.add_subcommand("coxeter", "Validate a Coxeter matrix and probe independence"), 1);
  cox->add_option("--probe", inv.opt.probes, "Distance p to probe (repeatable)");
  common(app.add_subcommand("suite", "Run every acceptance criterion; JSON summary"), 0);

  CLI11_PARSE(app, argc, argv);
  if (!inv.opt.budget_bytes && !std::getenv("WREATHKIT_BUDGET_MB")) inv.opt.budget_bytes = std::size_t{2} << 30;
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    std::ostringstream artifact;
    int status = 0;
    if (command == "suite") {
      status = cli::suite(artifact, inv.out.empty() ? std::cerr : std::cout);
    } else if (command == "iso") {
      status = cli::iso(load(inv.instances[0]), load(inv.instances[1]), inv.opt, artifact);
    } else {
      const Instance in = load(inv.instances[0]);
      try {
        if (command == "growth") status = cli::growth(in, inv.opt, artifact);
        if (command == "walls-check") status = cli::walls_check(in, inv.opt, artifact);
        if (command == "pw-lengths") status = cli::pw_lengths(in, inv.opt, artifact);
        if (command == "radical") status = cli::radical(in, inv.opt, artifact);
        if (command == "coxeter") status = cli::coxeter(in, inv.opt, artifact);
      } catch (const Error& e) {
        throw std::runtime_error(inv.instances[0] + ": " + e.what());
      }
    }
    if (const int e = emit(inv, artifact.str())) return e;
    return status;
  } catch (const std::exception& e) {
    std::cerr << "wreathkit " << command << ": " << e.what() << '\n';
    return 2;
  }
}
