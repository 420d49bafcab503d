#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsc/complex.hpp"
#include "rsc/errors.hpp"
#include "rsc/experiments.hpp"

namespace ex = rsc::experiments;

namespace {

struct Options {
  int d = 2;
  std::vector<int> d_list{2, 3, 4, 5, 10, 100, 1000};
  double c = 3.0;
  double c_min = 0.0;
  double c_max = 5.0;
  int c_steps = 51;
  int n = 30;
  int seeds = 10;
  std::uint64_t seed_base = 1;
  std::string out = "-";
  std::string format = "csv";
  int depth = 6;
  int trees = 100;
  std::size_t pool = 100000;
  int sweeps = 300;
  int radius = 1;
  std::size_t samples = 2000;
};

void emit(const Options& o, ex::Kind kind, const std::vector<ex::ExperimentRecord>& rows, std::ostream& out) {
  if (o.format == "json") {
    ex::write_json(out, rows);
  } else if (o.format == "csv") {
    ex::write_csv(out, kind, rows);
  } else {
    throw std::invalid_argument("--format " + o.format + " is not available for " + std::string(ex::kind_name(kind)));
  }
}

void run(const std::string& command, const Options& o, std::ostream& out) {
  const ex::SeedRange seeds{o.seed_base, o.seeds};
  if (command == "table") {
    emit(o, ex::Kind::table, ex::cmd_table(o.d_list), out);
  } else if (command == "betti-curve") {
    emit(o, ex::Kind::betti_curve, ex::cmd_betti_curve(o.d, ex::c_grid(o.c_min, o.c_max, o.c_steps), o.n, seeds), out);
  } else if (command == "shadow-curve") {
    emit(o, ex::Kind::shadow_curve, ex::cmd_shadow_curve(o.d, ex::c_grid(o.c_min, o.c_max, o.c_steps), o.n, seeds),
         out);
  } else if (command == "collapse-sweep") {
    emit(o, ex::Kind::collapse_sweep,
         ex::cmd_collapse_sweep(o.d, ex::c_grid(o.c_min, o.c_max, o.c_steps), o.n, seeds), out);
  } else if (command == "tree-spectral") {
    const ex::TreeSpectralOptions opt{o.depth, o.pool, o.sweeps};
    emit(o, ex::Kind::tree_spectral, ex::cmd_tree_spectral(o.d, o.c, {o.seed_base, o.trees}, opt), out);
  } else if (command == "hypertree") {
    if (o.format == "complex") {
      if (o.seeds != 1) throw std::invalid_argument("--format complex writes a single hypertree; use --seeds 1");
      rsc::write_complex(out, rsc::random_hypertree(o.n, o.d, o.seed_base));
    } else {
      emit(o, ex::Kind::hypertree, ex::cmd_hypertree(o.n, o.d, seeds), out);
    }
  } else if (command == "lwc-check") {
    const auto report = ex::cmd_lwc_check(o.d, o.c, o.n, o.radius, o.samples, seeds);
    if (o.format == "json") {
      out << ex::to_json(report).dump(2) << '\n';
    } else if (o.format == "csv") {
      ex::write_csv(out, ex::Kind::lwc_check,
                    {{ex::Kind::lwc_check,
                      {{"d", std::int64_t{report.d}},
                       {"c", report.c},
                       {"n", std::int64_t{report.n}},
                       {"radius", std::int64_t{report.radius}},
                       {"samples", static_cast<std::int64_t>(report.samples)}},
                      {{"types_observed", static_cast<std::int64_t>(report.counts.size())},
                       {"tv_distance", report.tv_distance}},
                      "",
                      std::string(ex::kToolVersion)}});
    } else {
      throw std::invalid_argument("--format " + o.format + " is not available for lwc-check");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random simplicial complexes: thresholds, homology, shadows and d-trees"};
  app.set_version_flag("--version", std::string(ex::kToolVersion));
  app.set_config("--config", "", "Flat key=value file; command-line flags override it");
  app.require_subcommand(1);

  Options o;
  app.add_option("--d", o.d, "Dimension d >= 2");
  app.add_option("--d-list", o.d_list, "Dimensions for `table`")->delimiter(',');
  app.add_option("--c", o.c, "Density parameter c (p = c/n)");
  app.add_option("--c-min", o.c_min, "Grid start");
  app.add_option("--c-max", o.c_max, "Grid end (inclusive)");
  app.add_option("--c-steps", o.c_steps, "Number of grid points");
  app.add_option("--n", o.n, "Number of vertices");
  app.add_option("--seeds", o.seeds, "Seeds per grid point");
  app.add_option("--seed-base", o.seed_base, "First seed");
  app.add_option("--out", o.out, "Output file, - for stdout");
  app.add_option("--format", o.format, "csv, json, or complex (hypertree only)")
      ->check(CLI::IsMember({"csv", "json", "complex"}));
  app.add_option("--depth", o.depth, "Largest even truncation depth for tree-spectral");
  app.add_option("--trees", o.trees, "Trees per depth for tree-spectral");
  app.add_option("--pool", o.pool, "Population-dynamics pool size");
  app.add_option("--sweeps", o.sweeps, "Population-dynamics sweeps");
  app.add_option("--radius", o.radius, "Neighbourhood radius for lwc-check (1 or 2)");
  app.add_option("--samples", o.samples, "Root samples for lwc-check");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"table", "c_col, c_star and the log10 gap per dimension"},
      {"betti-curve", "Mean Betti densities over a c grid"},
      {"shadow-curve", "Shadow density per (c, seed)"},
      {"tree-spectral", "Kernel mass on Poisson d-trees and by population dynamics"},
      {"lwc-check", "Neighbourhood law of random (d-1)-faces against the Poisson d-tree"},
      {"collapse-sweep", "Fraction of empty d-cores over a c grid"},
      {"hypertree", "Random hypertree statistics"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    if (o.out == "-") {
      run(command, o, std::cout);
    } else {
      std::ofstream file(o.out);
      if (!file) throw std::invalid_argument("cannot open " + o.out);
      run(command, o, file);
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
