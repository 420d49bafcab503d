#pragma once

// Experiment drivers behind the `rsc` CLI. Each command returns ExperimentRecords; the
// writers turn them into CSV (fixed header per kind, see docs/FORMATS.md) or JSON.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace rsc::experiments {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Kind { table, betti_curve, shadow_curve, tree_spectral, lwc_check, collapse_sweep, hypertree };

std::string_view kind_name(Kind kind);

using Value = std::variant<std::int64_t, double, std::string>;

struct Field {
  std::string name;
  Value value;
};

struct ExperimentRecord {
  Kind kind = Kind::table;
  std::vector<Field> params;
  std::vector<Field> stats;
  std::string timestamp;
  std::string tool_version{kToolVersion};
};

struct SeedRange {
  std::uint64_t base = 0;
  int count = 1;
};

/// `steps` evenly spaced values from c_min to c_max inclusive (one value when steps == 1).
std::vector<double> c_grid(double c_min, double c_max, int steps);

/// Documented CSV header for a kind: params followed by stats, in record order.
std::vector<std::string> csv_header(Kind kind);

/// Shortest round-trip text for a value; doubles use std::to_chars.
std::string format_value(const Value& v);

/// Rows contain params and stats only, so they are byte-stable across runs.
void write_csv(std::ostream& out, Kind kind, const std::vector<ExperimentRecord>& records);
nlohmann::json to_json(const ExperimentRecord& record);
void write_json(std::ostream& out, const std::vector<ExperimentRecord>& records);

/// Runs fn(i) for i in [0, count) on worker threads; results come back in index order.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t count, Fn&& fn);

std::vector<ExperimentRecord> cmd_table(const std::vector<int>& d_list);

/// Per grid point: mean beta_d and beta_{d-1} (normalised by C(n,d)) with theory overlays.
std::vector<ExperimentRecord> cmd_betti_curve(int d, const std::vector<double>& grid, int n, SeedRange seeds);

/// One row per (c, seed) with the shadow size, density and theory overlays.
std::vector<ExperimentRecord> cmd_shadow_curve(int d, const std::vector<double>& grid, int n, SeedRange seeds);

/// Per grid point: fraction of seeds whose d-core is empty.
std::vector<ExperimentRecord> cmd_collapse_sweep(int d, const std::vector<double>& grid, int n, SeedRange seeds);

struct TreeSpectralOptions {
  int max_depth = 6;
  std::size_t pool = 100000;
  int sweeps = 300;
};

/// Mean kernel mass of truncated Poisson d-trees per depth, plus a population-dynamics row.
std::vector<ExperimentRecord> cmd_tree_spectral(int d, double c, SeedRange trees, const TreeSpectralOptions& opt);

/// Per seed: a random hypertree's size, homology and collapse statistics.
std::vector<ExperimentRecord> cmd_hypertree(int n, int d, SeedRange seeds);

struct LwcReport {
  int d = 0;
  double c = 0.0;
  int n = 0;
  int radius = 1;
  std::size_t samples = 0;
  std::map<std::string, std::size_t> counts;   // type key -> observations
  std::map<std::string, double> law;           // type key -> Poisson d-tree probability
  double law_mass_unobserved = 0.0;
  double tv_distance = 0.0;
};

/// Neighbourhood types of uniformly random (d-1)-faces of Y_d(n, c/n) against the Poisson
/// d-tree law. Radius 1: root degree. Radius 2: root degree together with, for each incident
/// d-face, how many of its other (d-1)-faces lie in no further d-face.
LwcReport cmd_lwc_check(int d, double c, int n, int radius, std::size_t samples, SeedRange seeds);
nlohmann::json to_json(const LwcReport& report);

/// Probability of a radius-2 type under the Poisson d-tree law.
double radius_two_law(int d, double c, const std::vector<int>& exposed_per_face);
std::string radius_two_key(std::vector<int> exposed_per_face);

}  // namespace rsc::experiments

#include "rsc/detail/parallel.hpp"
