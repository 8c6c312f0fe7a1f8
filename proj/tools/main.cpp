#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "commands.hpp"

using namespace hk;
using namespace hk::cli;

namespace {

struct Flags {
  std::string config, out, csv;
  std::optional<std::uint64_t> seed;
  std::optional<double> density, tolerance;
  std::vector<std::string> assignments;
  std::string target;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "flat key = value file; flags override its values");
  sub->add_option("--seed", f.seed, "sampling seed");
  sub->add_option("--density", f.density, "sample count multiplier");
  sub->add_option("--tolerance", f.tolerance, "tolerance for identity checks");
  sub->add_option("--out", f.out, "JSON output file (default stdout)");
  sub->add_option("--csv", f.csv, "CSV plot data file");
  sub->add_option("-p,--param", f.assignments, "parameter key=value (rationals as p/q)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified symplectic handle constructions and surgery diagrams"};
  app.require_subcommand(1);
  Flags f;
  struct Sub {
    const char* name;
    const char* help;
    const char* target;
  };
  const Sub subs[] = {
      {"verify", "run a named certificate suite", "suite id"},
      {"build-handle", "build a handle: weak-convex, contact-pair, weinstein-convex, weinstein-concave", "family"},
      {"prepare", "prepare well-behaved structural data for surgery", nullptr},
      {"push-off", "transverse push-off of a Legendrian core", nullptr},
      {"emit-diagram", "surgery diagram for unknot, hopf or surface", "model"},
      {"pipeline", "convex-to-concave pipeline for unknot, hopf or surface", "model"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, f);
    if (s.target) sub->add_option("target", f.target, s.target)->required();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.target = f.target;
  try {
    if (!f.config.empty()) read_config_file(f.config, cfg);
    for (const auto& a : f.assignments) apply_assignment(a, cfg);
    if (f.seed) cfg.spec.seed = *f.seed;
    if (f.density) {
      if (!(*f.density > 0)) throw UsageError("density must be positive");
      cfg.spec.density = *f.density;
    }
    if (f.tolerance) {
      if (!(*f.tolerance > 0)) throw UsageError("tolerance must be positive");
      cfg.tolerance = *f.tolerance;
    }
    if (!f.out.empty()) cfg.out = f.out;
    if (!f.csv.empty()) cfg.csv = f.csv;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  std::ofstream out_file, csv_file;
  if (!cfg.out.empty()) {
    out_file.open(cfg.out);
    if (!out_file) {
      std::cerr << "error: cannot write " << cfg.out << '\n';
      return 2;
    }
  }
  if (!cfg.csv.empty()) {
    csv_file.open(cfg.csv);
    if (!csv_file) {
      std::cerr << "error: cannot write " << cfg.csv << '\n';
      return 2;
    }
  }
  std::ostream& out = cfg.out.empty() ? std::cout : out_file;
  out.precision(17);
  csv_file.precision(17);
  return run_command(cfg, Streams{out, cfg.csv.empty() ? nullptr : &csv_file, std::cerr});
}
