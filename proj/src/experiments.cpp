#include "rsc/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <ostream>
#include <random>
#include <stdexcept>

#include "rsc/complex.hpp"
#include "rsc/dtree.hpp"
#include "rsc/homology.hpp"
#include "rsc/shadow.hpp"
#include "rsc/thresholds.hpp"

namespace rsc::experiments {

namespace {

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ExperimentRecord make_record(Kind kind, std::vector<Field> params, std::vector<Field> stats) {
  return {kind, std::move(params), std::move(stats), now_iso8601(), std::string(kToolVersion)};
}

void require_grid(const std::vector<double>& grid) {
  for (const double c : grid) {
    if (!(c >= 0.0)) throw std::domain_error("grid values must be non-negative");
  }
}

void require_seeds(SeedRange seeds) {
  if (seeds.count < 1) throw std::invalid_argument("need at least one seed");
}

// Y_d(n, c/n), with c = 0 meaning the empty complex.
Complex sample_or_empty(int n, int d, double c, std::uint64_t seed) {
  return c == 0.0 ? Complex(n, d) : sample(n, d, c, seed);
}

double poisson_pmf(double c, int k) {
  return std::exp(-c + k * std::log(c) - std::lgamma(k + 1.0));
}

// Empty at c_star, where the density is undefined.
Value optional_density(int d, double c) {
  if (c == 0.0) return 0.0;
  try {
    return shadow_density<double>(d, c);
  } catch (const AtCriticalPoint&) {
    return std::string();
  }
}

double grid_step(const std::vector<double>& grid) {
  return grid.size() > 1 ? std::abs(grid[1] - grid[0]) : 0.1;
}

}  // namespace

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::table: return "table";
    case Kind::betti_curve: return "betti_curve";
    case Kind::shadow_curve: return "shadow_curve";
    case Kind::tree_spectral: return "tree_spectral";
    case Kind::lwc_check: return "lwc_check";
    case Kind::collapse_sweep: return "collapse_sweep";
    case Kind::hypertree: return "hypertree";
  }
  return "unknown";
}

std::vector<double> c_grid(double c_min, double c_max, int steps) {
  if (steps < 1) throw std::invalid_argument("c-steps must be >= 1");
  if (c_max < c_min) throw std::invalid_argument("c-max must be >= c-min");
  std::vector<double> grid;
  for (int i = 0; i < steps; ++i) {
    grid.push_back(steps == 1 ? c_min : c_min + (c_max - c_min) * i / (steps - 1));
  }
  return grid;
}

std::vector<std::string> csv_header(Kind kind) {
  switch (kind) {
    case Kind::table:
      return {"d", "t_psi", "c_col", "log10_t_star", "c_star", "log10_gap"};
    case Kind::betti_curve:
      return {"d", "n", "c", "seed_base", "seeds", "mean_betti_d", "mean_betti_dm1", "theory_betti_d",
              "theory_betti_dm1", "euler_lhs", "euler_theory", "identity_violations"};
    case Kind::shadow_curve:
      return {"n", "d", "c", "seed", "shadow_size", "density", "boundary_completions", "theory_density",
              "graph_theory_density", "near_critical"};
    case Kind::tree_spectral:
      return {"d", "c", "depth", "mean_x", "p_positive", "closed_form", "kernel_bound", "source", "samples"};
    case Kind::lwc_check:
      return {"d", "c", "n", "radius", "samples", "types_observed", "tv_distance"};
    case Kind::collapse_sweep:
      return {"d", "n", "c", "seed_base", "seeds", "empty_core_fraction", "mean_core_faces",
              "mean_covered_remaining", "c_col"};
    case Kind::hypertree:
      return {"n", "d", "seed", "faces", "expected_faces", "rank", "dim_hd", "core_faces", "collapsible"};
  }
  return {};
}

std::string format_value(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  const double x = std::get<double>(v);
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, Kind kind, const std::vector<ExperimentRecord>& records) {
  const auto header = csv_header(kind);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : records) {
    if (r.kind != kind) throw std::invalid_argument("write_csv: record kind mismatch");
    std::size_t col = 0;
    for (const auto* group : {&r.params, &r.stats}) {
      for (const auto& f : *group) {
        if (col >= header.size() || header[col] != f.name) {
          throw std::logic_error("record field '" + f.name + "' does not match the documented header");
        }
        out << (col ? "," : "") << format_value(f.value);
        ++col;
      }
    }
    if (col != header.size()) throw std::logic_error("record is missing documented columns");
    out << '\n';
  }
}

nlohmann::json to_json(const ExperimentRecord& record) {
  auto fields = [](const std::vector<Field>& fs) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& f : fs) {
      std::visit([&](const auto& v) { obj[f.name] = v; }, f.value);
    }
    return obj;
  };
  return {{"kind", std::string(kind_name(record.kind))},
          {"params", fields(record.params)},
          {"stats", fields(record.stats)},
          {"timestamp", record.timestamp},
          {"tool_version", record.tool_version}};
}

void write_json(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  out << arr.dump(2) << '\n';
}

std::vector<ExperimentRecord> cmd_table(const std::vector<int>& d_list) {
  std::vector<ExperimentRecord> out;
  for (const int d : d_list) {
    detail::require_dimension(d);
    // long double keeps t_star representable up to d of several thousand.
    const auto log_t = log_t_star<long double>(d);
    out.push_back(make_record(Kind::table, {{"d", std::int64_t{d}}},
                              {{"t_psi", static_cast<double>(t_psi<long double>(d))},
                               {"c_col", static_cast<double>(c_col<long double>(d))},
                               {"log10_t_star", static_cast<double>(log_t / std::log(10.0L))},
                               {"c_star", static_cast<double>(c_star<long double>(d))},
                               {"log10_gap", static_cast<double>(log10_gap_c_star<long double>(d))}}));
  }
  return out;
}

std::vector<ExperimentRecord> cmd_betti_curve(int d, const std::vector<double>& grid, int n, SeedRange seeds) {
  detail::require_dimension(d);
  require_grid(grid);
  require_seeds(seeds);
  const double ridges = static_cast<double>(binomial(n, d));
  std::vector<ExperimentRecord> out;
  for (const double c : grid) {
    const auto profiles = parallel_map<std::pair<HomologyProfile, std::pair<std::int64_t, std::int64_t>>>(
        static_cast<std::size_t>(seeds.count), [&](std::size_t i) {
          const auto y = sample_or_empty(n, d, c, seeds.base + i);
          const auto h = homology_profile(y);
          const auto rank_dm1 = static_cast<std::int64_t>(binomial(n - 1, d - 1));
          return std::pair{h, std::pair{h.dim_hd1 - h.dim_hd, h.n_faces_dm1 - rank_dm1 - h.n_faces_d}};
        });
    double betti_d = 0.0;
    double betti_dm1 = 0.0;
    double euler = 0.0;
    std::int64_t violations = 0;
    for (const auto& [h, e] : profiles) {
      betti_d += static_cast<double>(h.dim_hd);
      betti_dm1 += static_cast<double>(h.dim_hd1);
      euler += static_cast<double>(e.first);
      if (h.dim_hd - h.dim_ker_L != h.n_faces_d - h.n_faces_dm1) ++violations;
      if (e.first != e.second) ++violations;
    }
    const double norm = ridges * seeds.count;
    const double theory_d = c == 0.0 ? 0.0 : betti_density<double>(d, c);
    const double euler_theory = 1.0 - c / (d + 1);
    out.push_back(make_record(
        Kind::betti_curve,
        {{"d", std::int64_t{d}}, {"n", std::int64_t{n}}, {"c", c},
         {"seed_base", static_cast<std::int64_t>(seeds.base)}, {"seeds", std::int64_t{seeds.count}}},
        {{"mean_betti_d", betti_d / norm},
         {"mean_betti_dm1", betti_dm1 / norm},
         {"theory_betti_d", theory_d},
         {"theory_betti_dm1", theory_d + euler_theory},
         {"euler_lhs", euler / norm},
         {"euler_theory", euler_theory},
         {"identity_violations", violations}}));
  }
  return out;
}

std::vector<ExperimentRecord> cmd_shadow_curve(int d, const std::vector<double>& grid, int n, SeedRange seeds) {
  detail::require_dimension(d);
  require_grid(grid);
  require_seeds(seeds);
  const double cs = c_star<double>(d);
  const double half_step = grid_step(grid) / 2;
  std::vector<ExperimentRecord> out;
  for (const double c : grid) {
    const auto reports = parallel_map<ShadowReport>(static_cast<std::size_t>(seeds.count), [&](std::size_t i) {
      return shadow(sample_or_empty(n, d, c, seeds.base + i));
    });
    const auto theory = optional_density(d, c);
    const double graph = graph_shadow_density<double>(c);
    const std::int64_t near = std::abs(c - cs) <= half_step ? 1 : 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      out.push_back(make_record(Kind::shadow_curve,
                                {{"n", std::int64_t{n}}, {"d", std::int64_t{d}}, {"c", c},
                                 {"seed", static_cast<std::int64_t>(seeds.base + i)}},
                                {{"shadow_size", static_cast<std::int64_t>(r.members.size())},
                                 {"density", r.density},
                                 {"boundary_completions", static_cast<std::int64_t>(r.boundary_completions)},
                                 {"theory_density", theory},
                                 {"graph_theory_density", graph},
                                 {"near_critical", near}}));
    }
  }
  return out;
}

std::vector<ExperimentRecord> cmd_collapse_sweep(int d, const std::vector<double>& grid, int n, SeedRange seeds) {
  detail::require_dimension(d);
  require_grid(grid);
  require_seeds(seeds);
  const double cc = c_col<double>(d);
  std::vector<ExperimentRecord> out;
  for (const double c : grid) {
    const auto results = parallel_map<std::pair<std::size_t, std::size_t>>(
        static_cast<std::size_t>(seeds.count), [&](std::size_t i) {
          const auto r = collapse(sample_or_empty(n, d, c, seeds.base + i));
          return std::pair{r.core.size(), r.covered_remaining};
        });
    double empty = 0.0;
    double core = 0.0;
    double covered = 0.0;
    for (const auto& [faces, cov] : results) {
      empty += faces == 0 ? 1.0 : 0.0;
      core += static_cast<double>(faces);
      covered += static_cast<double>(cov);
    }
    const double k = seeds.count;
    out.push_back(make_record(
        Kind::collapse_sweep,
        {{"d", std::int64_t{d}}, {"n", std::int64_t{n}}, {"c", c},
         {"seed_base", static_cast<std::int64_t>(seeds.base)}, {"seeds", std::int64_t{seeds.count}}},
        {{"empty_core_fraction", empty / k}, {"mean_core_faces", core / k}, {"mean_covered_remaining", covered / k},
         {"c_col", cc}}));
  }
  return out;
}

std::vector<ExperimentRecord> cmd_tree_spectral(int d, double c, SeedRange trees, const TreeSpectralOptions& opt) {
  detail::require_dimension(d);
  require_seeds(trees);
  if (!(c > 0.0)) throw std::domain_error("c must be positive");
  if (opt.max_depth < 2 || opt.max_depth % 2 != 0) throw std::invalid_argument("depth must be an even integer >= 2");
  const auto roots = fixed_points<double>(d, c);
  const double bound = kernel_bound<double>(d, c);
  auto nearest_root = [&](double p) {
    return *std::min_element(roots.begin(), roots.end(),
                             [&](double a, double b) { return std::abs(a - p) < std::abs(b - p); });
  };
  std::vector<ExperimentRecord> out;
  auto emit = [&](std::int64_t depth, double mean_x, double p_positive, const char* source, std::int64_t samples) {
    const double closed = expected_kernel_closed_form(d, c, nearest_root(p_positive));
    out.push_back(make_record(Kind::tree_spectral, {{"d", std::int64_t{d}}, {"c", c}, {"depth", depth}},
                              {{"mean_x", mean_x},
                               {"p_positive", p_positive},
                               {"closed_form", closed},
                               {"kernel_bound", bound},
                               {"source", std::string(source)},
                               {"samples", samples}}));
  };
  for (int depth = 2; depth <= opt.max_depth; depth += 2) {
    const auto xs = parallel_map<double>(static_cast<std::size_t>(trees.count), [&](std::size_t i) {
      return x_recursive(sample_tree(d, c, depth, trees.base + i)).x;
    });
    double mean = 0.0;
    double positive = 0.0;
    for (const double x : xs) {
      mean += x;
      positive += x > 0.0 ? 1.0 : 0.0;
    }
    emit(depth, mean / trees.count, positive / trees.count, "trees", trees.count);
  }
  const auto pd = population_dynamics(d, c, opt.pool, opt.sweeps, trees.base);
  emit(2 * static_cast<std::int64_t>(opt.sweeps), pd.mean_x, pd.p_positive, "population",
       static_cast<std::int64_t>(opt.pool));
  return out;
}

std::vector<ExperimentRecord> cmd_hypertree(int n, int d, SeedRange seeds) {
  detail::require_dimension(d);
  require_seeds(seeds);
  if (n < d + 2) throw std::invalid_argument("hypertree needs n >= d+2");
  const auto rows = parallel_map<ExperimentRecord>(static_cast<std::size_t>(seeds.count), [&](std::size_t i) {
    const auto seed = seeds.base + i;
    const auto y = random_hypertree(n, d, seed);
    const auto rank = rank_q(boundary_matrix(y)).rank;
    const auto core = collapse(y).core.size();
    return make_record(Kind::hypertree,
                       {{"n", std::int64_t{n}}, {"d", std::int64_t{d}}, {"seed", static_cast<std::int64_t>(seed)}},
                       {{"faces", static_cast<std::int64_t>(y.size())},
                        {"expected_faces", static_cast<std::int64_t>(binomial(n - 1, d))},
                        {"rank", rank},
                        {"dim_hd", static_cast<std::int64_t>(y.size()) - rank},
                        {"core_faces", static_cast<std::int64_t>(core)},
                        {"collapsible", std::int64_t{core == 0 ? 1 : 0}}});
  });
  return rows;
}

std::string radius_two_key(std::vector<int> exposed_per_face) {
  std::sort(exposed_per_face.begin(), exposed_per_face.end());
  std::string key = std::to_string(exposed_per_face.size()) + "|";
  for (std::size_t i = 0; i < exposed_per_face.size(); ++i) {
    key += (i ? "," : "") + std::to_string(exposed_per_face[i]);
  }
  return key;
}

double radius_two_law(int d, double c, const std::vector<int>& exposed_per_face) {
  const int m = static_cast<int>(exposed_per_face.size());
  const double q = std::exp(-c);  // a grandchild has no children
  // Multinomial count of orderings of the multiset times the per-face binomial laws.
  std::map<int, int> multiplicity;
  double log_p = std::log(poisson_pmf(c, m)) + std::lgamma(m + 1.0);
  for (const int a : exposed_per_face) {
    ++multiplicity[a];
    log_p += std::lgamma(d + 1.0) - std::lgamma(a + 1.0) - std::lgamma(d - a + 1.0) + a * std::log(q) +
             (d - a) * std::log1p(-q);
  }
  for (const auto& [a, k] : multiplicity) log_p -= std::lgamma(k + 1.0);
  return std::exp(log_p);
}

LwcReport cmd_lwc_check(int d, double c, int n, int radius, std::size_t samples, SeedRange seeds) {
  detail::require_dimension(d);
  require_seeds(seeds);
  if (radius != 1 && radius != 2) throw std::invalid_argument("radius must be 1 or 2");
  if (samples == 0) throw std::invalid_argument("need at least one root sample");
  const auto ridge_count = binomial(n, d);
  const auto per_seed = samples / static_cast<std::size_t>(seeds.count);
  const auto extra = samples % static_cast<std::size_t>(seeds.count);
  const auto keys = parallel_map<std::vector<std::string>>(static_cast<std::size_t>(seeds.count), [&](std::size_t s) {
    const auto y = sample(n, d, c, seeds.base + s);
    const auto inc = ridge_incidence(y);
    std::mt19937_64 rng(seeds.base + s + 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<FaceIndex> pick(0, ridge_count - 1);
    const auto k = static_cast<std::size_t>(d + 1);
    std::vector<std::string> out;
    const auto count = per_seed + (s < extra ? 1 : 0);
    for (std::size_t i = 0; i < count; ++i) {
      const auto root = pick(rng);
      const auto faces = inc.incident(root);
      if (radius == 1) {
        out.push_back(std::to_string(faces.size()));
        continue;
      }
      std::vector<int> exposed;
      for (const auto f : faces) {
        int e = 0;
        for (std::size_t j = 0; j < k; ++j) {
          const auto g = inc.facets[f * k + j];
          if (g != root && inc.degree(g) == 1) ++e;
        }
        exposed.push_back(e);
      }
      out.push_back(radius_two_key(exposed));
    }
    return out;
  });

  LwcReport report;
  report.d = d;
  report.c = c;
  report.n = n;
  report.radius = radius;
  report.samples = samples;
  for (const auto& batch : keys) {
    for (const auto& key : batch) ++report.counts[key];
  }
  double observed_law = 0.0;
  double abs_diff = 0.0;
  for (const auto& [key, count] : report.counts) {
    double law = 0.0;
    if (radius == 1) {
      law = poisson_pmf(c, std::stoi(key));
    } else {
      const auto bar = key.find('|');
      std::vector<int> exposed;
      std::size_t pos = bar + 1;
      while (pos < key.size()) {
        auto comma = key.find(',', pos);
        if (comma == std::string::npos) comma = key.size();
        exposed.push_back(std::stoi(key.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      law = radius_two_law(d, c, exposed);
    }
    report.law[key] = law;
    observed_law += law;
    abs_diff += std::abs(static_cast<double>(count) / static_cast<double>(samples) - law);
  }
  report.law_mass_unobserved = std::max(0.0, 1.0 - observed_law);
  report.tv_distance = 0.5 * (abs_diff + report.law_mass_unobserved);
  return report;
}

nlohmann::json to_json(const LwcReport& report) {
  nlohmann::json types = nlohmann::json::array();
  for (const auto& [key, count] : report.counts) {
    types.push_back({{"type", key},
                     {"count", count},
                     {"empirical", static_cast<double>(count) / static_cast<double>(report.samples)},
                     {"law", report.law.at(key)}});
  }
  return {{"kind", "lwc_check"},
          {"params",
           {{"d", report.d}, {"c", report.c}, {"n", report.n}, {"radius", report.radius}, {"samples", report.samples}}},
          {"types", types},
          {"law_mass_unobserved", report.law_mass_unobserved},
          {"tv_distance", report.tv_distance},
          {"tool_version", std::string(kToolVersion)},
          {"note", "finite-n bands are engineering choices; the local weak limit is asymptotic"}};
}

}  // namespace rsc::experiments
