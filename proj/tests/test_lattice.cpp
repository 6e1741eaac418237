#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "hexsum/fourier.hpp"
#include "hexsum/lattice.hpp"
#include "oracles.hpp"

using namespace hexsum;

TEST_CASE("HexIndex enforces a zero sum") {
  CHECK_THROWS_AS(HexIndex(1, 1, 1), std::invalid_argument);
  const HexIndex k(2, -3, 1);
  CHECK(k.degree() == 3);
  CHECK(-k == HexIndex(-2, 3, -1));
  CHECK(HexIndex::from_pair(4, -1).k3() == -3);
}

TEST_CASE("HexPoint checks the coordinate sum") {
  CHECK_THROWS_AS(HexPoint(0.5, 0.5, 0.0), std::invalid_argument);
  CHECK_NOTHROW(HexPoint(0.5, 0.25, -0.75));
  const HexPoint t(0.3, -0.1, -0.2);
  const HexPoint swapped(-0.1, 0.3, -0.2);
  // Swapping t1 and t2 swaps z1 with -z2 and flips z3.
  CHECK(swapped.z1() == doctest::Approx(-t.z2()));
  CHECK(swapped.z3() == doctest::Approx(-t.z3()));
  CHECK(t.z1() + t.z2() + t.z3() == doctest::Approx(0.0));
}

TEST_CASE("lattice constants") {
  const auto& c = lattice_constants();
  CHECK(c.H[0][0] == doctest::Approx(std::sqrt(3.0)));
  CHECK(c.H[0][1] == 0.0);
  CHECK(c.H[1][0] == -1.0);
  CHECK(c.H[1][1] == 2.0);
  CHECK(c.omega_area == 3.0);
  CHECK(c.jacobian == doctest::Approx(2.0 * std::sqrt(3.0) / 3.0));
}

TEST_CASE("omega area by Monte Carlo") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int inside = 0;
  const int samples = 200000;
  for (int i = 0; i < samples; ++i) {
    if (is_in_omega(HexPoint::from_pair(u(rng), u(rng)))) ++inside;
  }
  // The box [-1,1)^2 has area 4.
  CHECK(4.0 * inside / samples == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("cartesian conversion") {
  auto [x1, x2] = to_cartesian(HexPoint{});
  CHECK(x1 == 0.0);
  CHECK(x2 == 0.0);
  const auto t = from_cartesian(2.0 / std::sqrt(3.0), 0.0);
  CHECK(t.t1() == doctest::Approx(1.0));
  CHECK(t.t2() == doctest::Approx(0.0));
  CHECK(t.t3() == doctest::Approx(-1.0));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng), b = u(rng);
    const auto p = from_cartesian(a, b);
    CHECK(std::abs(p.t1() + p.t2() + p.t3()) <= 1e-12);
    const auto [y1, y2] = to_cartesian(p);
    CHECK(std::abs(y1 - a) <= 1e-12);
    CHECK(std::abs(y2 - b) <= 1e-12);
  }
}

TEST_CASE("jacobian of the coordinate change") {
  const double h = 1e-3;
  const auto [a1, a2] = to_cartesian(HexPoint::from_pair(0.2, 0.1));
  const auto [b1, b2] = to_cartesian(HexPoint::from_pair(0.2 + h, 0.1));
  const auto [c1, c2] = to_cartesian(HexPoint::from_pair(0.2, 0.1 + h));
  const double area = std::abs((b1 - a1) * (c2 - a2) - (b2 - a2) * (c1 - a1));
  CHECK(area / (h * h) == doctest::Approx(2.0 * std::sqrt(3.0) / 3.0).epsilon(1e-9));
}

TEST_CASE("is_in_omega boundary convention") {
  CHECK(is_in_omega(HexPoint{}));
  CHECK_FALSE(is_in_omega(HexPoint(1.0, 0.0, -1.0)));
  CHECK_FALSE(is_in_omega(HexPoint(0.9, 0.9, -1.8)));
  CHECK(is_in_omega(HexPoint(-1.0, 0.0, 1.0)));
  CHECK(is_in_omega(HexPoint(0.0, -1.0, 1.0)));
  CHECK_FALSE(is_in_omega(HexPoint(1.0, -1.0, 0.0)));
}

TEST_CASE("fold maps into omega and preserves the basis functions") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 1000; ++i) {
    const auto t = HexPoint::from_pair(u(rng), u(rng));
    const auto f = fold(t);
    CHECK(is_in_omega(f));
    CHECK(fold(f) == f);
    for (int nu = 0; nu <= 5; ++nu) {
      for (const auto& k : index_shell(nu)) {
        const auto a = oracle::phi(k.k1(), k.k2(), k.k3(), t.t1(), t.t2(), t.t3());
        const auto b = oracle::phi(k.k1(), k.k2(), k.k3(), f.t1(), f.t2(), f.t3());
        REQUIRE(std::abs(a - b) <= 1e-10);
      }
    }
  }
}

TEST_CASE("fold is invariant under periods") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int i = 0; i < 200; ++i) {
    const auto t = fold(HexPoint::from_pair(u(rng), u(rng)));
    CHECK(fold(t) == t);
    for (const auto& j : {HexIndex(3, 0, -3), HexIndex(1, 1, -2), HexIndex(-2, 1, 1), HexIndex(4, -2, -2)}) {
      const auto s = fold(shift(t, j));
      CHECK(std::abs(s.t1() - t.t1()) <= 1e-12);
      CHECK(std::abs(s.t2() - t.t2()) <= 1e-12);
    }
  }
  CHECK(is_period(3, 0, -3));
  CHECK(is_period(1, 1, -2));
  CHECK_FALSE(is_period(1, 0, -1));
}

TEST_CASE("translates of omega tile the plane exactly once") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 300; ++i) {
    const double a = u(rng), b = u(rng);
    int hits = 0;
    for (int j1 = -8; j1 <= 8; ++j1) {
      for (int j2 = -8; j2 <= 8; ++j2) {
        if (!is_period(j1, j2, -j1 - j2)) continue;
        if (is_in_omega(HexPoint::from_pair(a + j1, b + j2))) ++hits;
      }
    }
    CHECK(hits == 1);
  }
}

TEST_CASE("index shells match brute-force enumeration") {
  CHECK_THROWS_AS(index_shell(-1), std::invalid_argument);
  const auto s0 = index_shell(0);
  REQUIRE(s0.size() == 1);
  CHECK(s0[0] == HexIndex(0, 0, 0));
  for (int nu = 1; nu <= 20; ++nu) {
    const auto shell = index_shell(nu);
    const auto brute = oracle::shell(nu);
    REQUIRE(shell.size() == brute.size());
    CHECK(shell.size() == static_cast<std::size_t>(6 * nu));
    for (std::size_t i = 0; i < shell.size(); ++i) {
      // The brute-force scan is lexicographic too.
      CHECK(shell[i].k1() == brute[i].first);
      CHECK(shell[i].k2() == brute[i].second);
    }
  }
  std::set<std::pair<int, int>> one;
  for (const auto& k : index_shell(1)) one.insert({k.k1(), k.k2()});
  CHECK(one == std::set<std::pair<int, int>>{{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}});
}

TEST_CASE("shell order is by degree then lexicographic") {
  ShellOrder less;
  CHECK(less(HexIndex(1, -1, 0), HexIndex(-2, 1, 1)));
  CHECK(less(HexIndex(-1, 0, 1), HexIndex(0, -1, 1)));
  CHECK_FALSE(less(HexIndex(0, 0, 0), HexIndex(0, 0, 0)));
}
