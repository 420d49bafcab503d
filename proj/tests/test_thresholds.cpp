#include <doctest.h>

#include <cmath>
#include <random>

#include "rsc/thresholds.hpp"

using namespace rsc;

namespace {

// Plain bisection on phi in t, without any of the log-domain machinery.
long double phi_root_by_bisection(int d) {
  auto f = [d](long double t) { return (d + 1) * (1 - t) + (1 + d * t) * std::log(t); };
  long double lo = 1e-300L;
  long double hi = 0.999L;
  // phi is negative at 0+ and first crosses zero on the way up.
  long double step = hi / 1000;
  for (long double t = step; t < hi; t += step) {
    if (f(t) > 0) {
      hi = t;
      break;
    }
  }
  for (int i = 0; i < 400; ++i) {
    const long double mid = (lo + hi) / 2;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

// Smallest sign change of t - exp(-c(1-t)^d) on a uniform grid, linearly interpolated.
double t_c_by_grid(int d, double c, int points) {
  auto h = [&](double t) { return t - std::exp(-c * std::pow(1 - t, d)); };
  double prev_t = 0.0;
  double prev_h = h(0.0);
  for (int i = 1; i <= points; ++i) {
    const double t = static_cast<double>(i) / points;
    const double v = h(t);
    if ((prev_h < 0) != (v < 0)) return prev_t + (t - prev_t) * prev_h / (prev_h - v);
    prev_t = t;
    prev_h = v;
  }
  return NAN;
}

// Case split: 1 - c/(d+1) up to c_star, the t_c branch above it.
double kernel_bound_case_split(int d, double c) {
  if (c <= c_star<double>(d)) return 1.0 - c / (d + 1);
  const double t = t_c<double>(d, c);
  return t + c * t * std::pow(1 - t, d) - c / (d + 1) * (1 - std::pow(1 - t, d + 1));
}

}  // namespace

TEST_CASE("threshold table values") {
  const int ds[] = {2, 3, 4, 5, 10, 100, 1000};
  const double col[] = {2.455, 3.089, 3.509, 3.822, 4.749, 7.555, 10.175};
  for (int i = 0; i < 7; ++i) {
    CAPTURE(ds[i]);
    CHECK(std::abs(c_col<long double>(ds[i]) - col[i]) < 1e-3);
  }
  const double star[] = {2.754, 3.907, 4.962, 5.984};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(c_star<double>(ds[i]) - star[i]) < 1e-3);
  CHECK(std::abs(log10_gap_c_star<double>(10) - (-3.73)) < 0.01);
  CHECK(std::abs(log10_gap_c_star<double>(100) - (-41.8)) < 0.1);
  CHECK(std::abs(log10_gap_c_star<double>(1000) - (-431.7)) < 0.1);
}

TEST_CASE("log10 gap agrees with direct subtraction where it is representable") {
  for (int d = 2; d <= 8; ++d) {
    CAPTURE(d);
    const long double direct = std::log10((d + 1) - c_star<long double>(d));
    CHECK(std::abs(log10_gap_c_star<long double>(d) - direct) < 1e-9);
  }
}

TEST_CASE("phi") {
  CHECK_THROWS_AS(phi<double>(2, 0.0), std::domain_error);
  CHECK_THROWS_AS(phi<double>(2, 1.0), std::domain_error);
  CHECK_THROWS_AS(phi<double>(1, 0.5), std::domain_error);
  CHECK(phi<double>(2, 1e-8) < -10);
  for (const double s : {1e-2, 1e-3}) {
    const double v = phi<double>(2, 1 - s);
    CHECK(v > 0);
    CHECK(v / (0.5 * s * s) == doctest::Approx(1.0).epsilon(3 * s));
  }
  CHECK(std::abs(phi<double>(2, t_star<double>(2))) < 1e-10);
}

TEST_CASE("t_star matches an independent bisection on phi") {
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    const long double oracle = phi_root_by_bisection(d);
    CHECK(std::abs(t_star<long double>(d) - oracle) < 1e-12L);
  }
}

TEST_CASE("psi") {
  CHECK(psi<double>(2, 0.5) == doctest::Approx(4 * std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(psi<double>(2, t_psi<double>(2)) - 2.455) < 1e-3);
  CHECK(psi<double>(2, 1 - 1e-6) > 1e5);
  CHECK_THROWS_AS(psi<double>(2, -0.1), std::domain_error);
}

TEST_CASE("root ordering and large-d asymptotics") {
  for (int d = 2; d <= 60; ++d) {
    CAPTURE(d);
    CHECK(t_star<double>(d) > 0);
    CHECK(t_star<double>(d) < t_psi<double>(d));
    CHECK(c_col<double>(d) < c_star<double>(d));
    CHECK(c_star<double>(d) < d + 1 + 1e-12);
    CHECK(log10_gap_c_star<double>(d) < 0);
  }
  const double e21 = std::exp(-21.0);
  CHECK(std::abs(t_star<double>(20) - e21) / e21 < 0.01);
  for (int d = 10; d <= 200; d += 10) {
    CAPTURE(d);
    const long double approx = (d + 1) * (1 - std::exp(-(d + 1.0L)));
    CHECK(std::abs(c_star<long double>(d) - approx) < 1e-6L);
  }
}

TEST_CASE("defining equations hold for d up to 1000") {
  for (int d = 2; d <= 1000; ++d) {
    CAPTURE(d);
    const long double ts = t_star<long double>(d);
    CHECK(std::abs(phi<long double>(d, ts)) < 1e-10L);
    CHECK(std::abs(psi_slope_numerator<long double>(d, t_psi<long double>(d))) < 1e-10L);
    CHECK(std::abs(psi<long double>(d, ts) - c_star<long double>(d)) < 1e-9L * d);
  }
}

TEST_CASE("fixed_points") {
  CHECK(fixed_points<double>(2, 2.0) == std::vector<double>{1.0});
  CHECK(fixed_points<double>(5, 0.5) == std::vector<double>{1.0});
  CHECK_THROWS_AS(fixed_points<double>(2, 0.0), std::domain_error);

  const double c = 2 * c_col<double>(2);
  const auto roots = fixed_points<double>(2, c);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] < roots[1]);
  CHECK(roots[1] < roots[2]);
  CHECK(roots[2] == 1.0);
  CHECK(std::abs(psi<double>(2, roots[0]) - c) < 1e-9);
  CHECK(std::abs(psi<double>(2, roots[1]) - c) < 1e-9);

  const double cc = c_col<double>(3);
  const auto tangent = fixed_points<double>(3, cc + 1e-12);
  CHECK(tangent.size() == 2);
  CHECK(tangent.front() == doctest::Approx(t_psi<double>(3)));

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dd(2, 40);
  std::uniform_real_distribution<double> cd(0.01, 60.0);
  for (int i = 0; i < 1000; ++i) {
    const int d = dd(rng);
    const double cv = cd(rng);
    const auto r = fixed_points<double>(d, cv);
    REQUIRE(r.size() <= 3);
    CHECK(r.back() == 1.0);
    for (std::size_t j = 0; j + 1 < r.size(); ++j) {
      CHECK(r[j] > 0);
      CHECK(r[j] < 1);
      CHECK(std::abs(psi<double>(d, r[j]) - cv) < 1e-8 * std::max(1.0, cv));
    }
  }
}

TEST_CASE("t_c") {
  CHECK_THROWS_AS(t_c<double>(2, 2.0), NoInteriorRoot);
  for (int d = 2; d <= 8; ++d) {
    CAPTURE(d);
    CHECK(std::abs(t_c<double>(d, c_star<double>(d)) - t_star<double>(d)) < 1e-9);
  }
  for (const double c : {2.5, 3.0, 3.5, 4.0, 10.0}) {
    const double t = t_c<double>(2, c);
    CHECK(std::abs(t - std::exp(-c * std::pow(1 - t, 2))) < 1e-12);
    CHECK(t < t_psi<double>(2));
  }
  CHECK(std::abs(t_c<double>(2, 4.0) - t_c_by_grid(2, 4.0, 1000000)) < 1e-6);
}

TEST_CASE("betti_density") {
  for (double c = 0.1; c < 2.754; c += 0.1) CHECK(betti_density<double>(2, c) == 0.0);
  CHECK_THROWS_AS(betti_density<double>(2, 0.0), std::domain_error);

  const double c = 3.5;
  const double t = t_c_by_grid(2, c, 1000000);
  const double expected = c * t * (1 - t) * (1 - t) + c / 3 * std::pow(1 - t, 3) - (1 - t);
  CHECK(betti_density<double>(2, c) > 0);
  CHECK(betti_density<double>(2, c) == doctest::Approx(expected).epsilon(1e-5));

  for (int d = 2; d <= 6; ++d) {
    for (double cv = c_star<double>(d) + 0.05; cv < d + 6; cv += 0.37) {
      CAPTURE(d);
      CAPTURE(cv);
      CHECK(std::abs(kernel_bound<double>(d, cv) - (1 - cv / (d + 1)) - betti_density<double>(d, cv)) < 1e-12);
    }
  }
}

TEST_CASE("betti_density_prime") {
  const double h = 1e-6;
  const double fd = (betti_density<double>(2, 3.5 + h) - betti_density<double>(2, 3.5 - h)) / (2 * h);
  CHECK(std::abs(fd - betti_density_prime<double>(2, 3.5)) < 1e-5);
  CHECK_THROWS_AS(betti_density_prime<double>(2, 2.6), NoInteriorRoot);
  for (const double c : {2.8, 3.0, 4.5, 9.0}) {
    CHECK(betti_density_prime<double>(2, c) == doctest::Approx(shadow_density<double>(2, c) / 3).epsilon(1e-14));
  }
  CHECK(betti_density_prime<double>(2, c_star<double>(2) + 1e-6) > 0.1);
}

TEST_CASE("shadow_density") {
  CHECK(shadow_density<double>(2, 2.0) == 0.0);
  CHECK(shadow_density<double>(2, 100.0) > 0.99);
  CHECK_THROWS_AS(shadow_density<double>(2, c_star<double>(2)), AtCriticalPoint);
  const double jump = std::pow(1 - t_star<double>(2), 3);
  CHECK(std::abs(shadow_density<double>(2, c_star<double>(2) + 1e-9) - jump) < 1e-6);
  for (int d = 2; d <= 50; ++d) {
    CAPTURE(d);
    const double floor = std::pow(1 - t_star<double>(d), d + 1);
    CHECK(shadow_density<double>(d, c_star<double>(d) + 1e-9) >= floor - 1e-6);
  }
}

TEST_CASE("graph comparator") {
  CHECK(graph_shadow_density<double>(0.5) == 0.0);
  const double t = std::sqrt(graph_shadow_density<double>(2.0));
  const double tc = 1 - t;
  CHECK(std::abs(tc - std::exp(-2.0 * (1 - tc))) < 1e-12);
}

TEST_CASE("kernel_bound") {
  CHECK(kernel_bound<double>(2, 2.0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dd(2, 12);
  std::uniform_real_distribution<double> cd(0.05, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const int d = dd(rng);
    const double c = cd(rng);
    CAPTURE(d);
    CAPTURE(c);
    const double kb = kernel_bound<double>(d, c);
    CHECK(kb >= 0.0);
    CHECK(kb <= 1.0);
    CHECK(std::abs(kb - kernel_bound_case_split(d, c)) < 1e-12);
  }
}

TEST_CASE("threshold_report") {
  const auto bare = threshold_report<double>(3);
  CHECK(bare.c_star == c_star<double>(3));
  CHECK_FALSE(bare.t_c.has_value());
  const auto r = threshold_report<double>(2, 3.5);
  REQUIRE(r.t_c.has_value());
  CHECK(*r.t_c == t_c<double>(2, 3.5));
  CHECK(r.g_prime.has_value());
  CHECK(*r.shadow_density == shadow_density<double>(2, 3.5));
  const auto sub = threshold_report<double>(2, 2.6);
  CHECK(sub.t_c.has_value());
  CHECK(*sub.g == 0.0);
  CHECK_FALSE(sub.g_prime.has_value());
}
