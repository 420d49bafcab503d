#include "rsc/dtree.hpp"

#include <stdexcept>

#include "rsc/thresholds.hpp"

namespace rsc {

DTree::DTree(int d, std::vector<int> child_counts, int truncation_depth)
    : d_(d), truncation_depth_(truncation_depth), child_counts_(std::move(child_counts)) {
  if (d < 2) throw std::domain_error("d-tree needs d >= 2");
  if (truncation_depth < 0 || truncation_depth % 2 != 0) {
    throw std::invalid_argument("truncation depth must be a non-negative even integer");
  }
  if (child_counts_.empty()) throw std::invalid_argument("d-tree needs a root");
  depths_.assign(1, 0);
  first_grandchild_.reserve(child_counts_.size());
  std::size_t next = 1;
  for (std::size_t v = 0; v < child_counts_.size(); ++v) {
    if (v >= depths_.size()) throw std::invalid_argument("child counts describe more vertices than the tree has");
    const int m = child_counts_[v];
    if (m < 0) throw std::invalid_argument("negative child count");
    if (m > 0 && depths_[v] >= truncation_depth) throw std::invalid_argument("vertex at truncation depth has children");
    first_grandchild_.push_back(next);
    const auto added = static_cast<std::size_t>(m) * static_cast<std::size_t>(d);
    depths_.insert(depths_.end(), added, depths_[v] + 2);
    next += added;
    odd_count_ += static_cast<std::size_t>(m);
  }
  if (depths_.size() != child_counts_.size()) throw std::invalid_argument("child counts missing for some vertices");
}

DTree DTree::depth_two(int d, int m) {
  std::vector<int> counts(1 + static_cast<std::size_t>(m) * static_cast<std::size_t>(d), 0);
  counts[0] = m;
  return DTree(d, std::move(counts), 2);
}

std::vector<std::size_t> DTree::level_sizes() const {
  std::vector<std::size_t> out(static_cast<std::size_t>(truncation_depth_ / 2 + 1), 0);
  for (const int depth : depths_) ++out[static_cast<std::size_t>(depth / 2)];
  return out;
}

int poisson_draw(double c, std::mt19937_64& rng) {
  if (c <= 30.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    double p = std::exp(-c);
    int k = 0;
    while (u > p) {
      u -= p;
      ++k;
      p *= c / k;
      if (p == 0.0) break;
    }
    return k;
  }
  std::poisson_distribution<int> dist(c);
  return dist(rng);
}

DTree sample_tree(int d, double c, int truncation_depth, std::uint64_t seed) {
  if (!(c > 0.0)) throw std::domain_error("Poisson parameter must be positive");
  if (truncation_depth < 0 || truncation_depth % 2 != 0) {
    throw std::invalid_argument("truncation depth must be a non-negative even integer");
  }
  std::mt19937_64 rng(seed);
  std::vector<int> counts;
  std::vector<int> depths{0};
  for (std::size_t v = 0; v < depths.size(); ++v) {
    const int m = depths[v] < truncation_depth ? poisson_draw(c, rng) : 0;
    counts.push_back(m);
    depths.insert(depths.end(), static_cast<std::size_t>(m) * static_cast<std::size_t>(d), depths[v] + 2);
  }
  return DTree(d, std::move(counts), truncation_depth);
}

KernelMass x_recursive(const DTree& t) {
  std::vector<double> x(t.even_count(), 1.0);
  const auto d = static_cast<std::size_t>(t.d());
  for (std::size_t v = t.even_count(); v-- > 0;) {
    const int m = t.child_count(v);
    if (m == 0) continue;
    double inverse_sum = 0.0;
    bool zero = false;
    for (int j = 0; j < m && !zero; ++j) {
      const auto first = t.first_grandchild(v) + static_cast<std::size_t>(j) * d;
      double s = 0.0;
      for (std::size_t r = 0; r < d; ++r) s += x[first + r];
      if (s == 0.0) {
        zero = true;
      } else {
        inverse_sum += 1.0 / s;
      }
    }
    x[v] = zero ? 0.0 : 1.0 / (1.0 + inverse_sum);
  }
  return {x.front()};
}

PopulationEstimate population_dynamics(int d, double c, std::size_t pool, int sweeps, std::uint64_t seed,
                                       PoolInit init) {
  if (d < 2) throw std::domain_error("population dynamics needs d >= 2");
  if (!(c > 0.0)) throw std::domain_error("Poisson parameter must be positive");
  if (pool < 10000 || sweeps < 100) throw std::invalid_argument("population dynamics needs pool >= 1e4 and sweeps >= 100");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool - 1);
  std::vector<double> current(pool, init == PoolInit::AllOnes ? 1.0 : 0.0);
  std::vector<double> next(pool);
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (auto& out : next) {
      const int m = poisson_draw(c, rng);
      double inverse_sum = 0.0;
      bool zero = false;
      // All m*d draws are made even after a zero group so the stream does not depend on values.
      for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int r = 0; r < d; ++r) s += current[pick(rng)];
        if (s == 0.0) {
          zero = true;
        } else {
          inverse_sum += 1.0 / s;
        }
      }
      out = zero ? 0.0 : 1.0 / (1.0 + inverse_sum);
    }
    current.swap(next);
  }
  PopulationEstimate est;
  std::size_t positive = 0;
  for (const double x : current) {
    est.mean_x += x;
    positive += x > 0.0 ? 1 : 0;
  }
  est.mean_x /= static_cast<double>(pool);
  est.p_positive = static_cast<double>(positive) / static_cast<double>(pool);
  return est;
}

double expected_kernel_closed_form(int d, double c, double t) {
  if (std::abs(t - std::exp(-c * std::pow(1.0 - t, d))) > 1e-9) {
    throw NotAFixedPoint("t is not a root of t = exp(-c(1-t)^d)");
  }
  return kernel_objective<double>(d, c, t);
}

}  // namespace rsc
