#include "hexsum/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hexsum {

HexIndex::HexIndex(int k1, int k2, int k3) : k_{k1, k2, k3} {
  if (k1 + k2 + k3 != 0) {
    throw std::invalid_argument("HexIndex (" + std::to_string(k1) + "," + std::to_string(k2) + "," +
                                std::to_string(k3) + ") does not sum to zero");
  }
}

HexIndex HexIndex::from_pair(int k1, int k2) noexcept {
  HexIndex k;
  k.k_ = {k1, k2, -k1 - k2};
  return k;
}

int HexIndex::degree() const noexcept {
  return std::max({std::abs(k_[0]), std::abs(k_[1]), std::abs(k_[2])});
}

HexPoint::HexPoint(double t1, double t2, double t3) : t_{t1, t2, t3} {
  if (!(std::abs(t1 + t2 + t3) <= kSumTolerance)) {
    throw std::invalid_argument("HexPoint coordinates do not sum to zero");
  }
}

HexPoint HexPoint::from_pair(double t1, double t2) noexcept {
  HexPoint t;
  t.t_ = {t1, t2, -t1 - t2};
  return t;
}

namespace {
constexpr double kTwoPiThirds = 2.0 * std::numbers::pi / 3.0;
}

double HexPoint::z1() const noexcept { return kTwoPiThirds * (t_[1] - t_[2]); }
double HexPoint::z2() const noexcept { return kTwoPiThirds * (t_[2] - t_[0]); }
double HexPoint::z3() const noexcept { return kTwoPiThirds * (t_[0] - t_[1]); }

const LatticeConstants& lattice_constants() noexcept {
  static const LatticeConstants c{
      {{{std::numbers::sqrt3, 0.0}, {-1.0, 2.0}}},
      3.0,
      2.0 * std::numbers::sqrt3 / 3.0,
  };
  return c;
}

std::pair<double, double> to_cartesian(const HexPoint& t) noexcept {
  const auto& H = lattice_constants().H;
  const double u = 2.0 * t.t1() + t.t2();
  const double v = t.t1() + 2.0 * t.t2();
  return {(H[0][0] * u + H[0][1] * v) / 3.0, (H[1][0] * u + H[1][1] * v) / 3.0};
}

HexPoint from_cartesian(double x1, double x2) noexcept {
  const double a = 0.5 * x2;
  const double b = 0.5 * std::numbers::sqrt3 * x1;
  HexPoint t = HexPoint::from_pair(-a + b, x2);
  // from_pair sets t3 = -(t1 + t2), which is -a - b up to rounding.
  return t;
}

bool is_in_omega(const HexPoint& t) noexcept {
  return -1.0 <= t.t1() && t.t1() < 1.0 &&  //
         -1.0 <= t.t2() && t.t2() < 1.0 &&  //
         -1.0 < t.t3() && t.t3() <= 1.0;
}

namespace {

// Distance outside Omega (0 inside the closed hexagon).
double violation(double t1, double t2) noexcept {
  const double t3 = -t1 - t2;
  double v = 0.0;
  v = std::max(v, -1.0 - t1);
  v = std::max(v, t1 - 1.0);
  v = std::max(v, -1.0 - t2);
  v = std::max(v, t2 - 1.0);
  v = std::max(v, -1.0 - t3);
  v = std::max(v, t3 - 1.0);
  return v;
}

}  // namespace

HexPoint fold(const HexPoint& t) noexcept {
  if (is_in_omega(t)) return t;

  // Periods in (t1, t2) are spanned by (1, 1) and (3, 0):
  //   (t1, t2) = a (1, 1) + b (3, 0)  with  a = t2, b = (t1 - t2) / 3.
  const double a = std::floor(t.t2());
  const double b = std::floor((t.t1() - t.t2()) / 3.0);
  const double base1 = t.t1() - a - 3.0 * b;
  const double base2 = t.t2() - a;

  HexPoint best = HexPoint::from_pair(base1, base2);
  double best_violation = violation(base1, base2);
  int best_cost = 0;
  // The reduced point lies in the parallelogram [0,4) x [0,1); Omega is reached
  // by one more small period shift.
  for (int p = -2; p <= 2; ++p) {
    for (int q = -2; q <= 2; ++q) {
      const double s1 = base1 - p - 3.0 * q;
      const double s2 = base2 - p;
      HexPoint c = HexPoint::from_pair(s1, s2);
      if (is_in_omega(c)) return c;
      const double v = violation(s1, s2);
      const int cost = std::abs(p) + std::abs(q);
      if (v < best_violation || (v == best_violation && cost < best_cost)) {
        best = c;
        best_violation = v;
        best_cost = cost;
      }
    }
  }
  return best;
}

HexPoint shift(const HexPoint& t, const HexIndex& j) noexcept {
  return HexPoint::from_pair(t.t1() + j.k1(), t.t2() + j.k2());
}

bool is_period(int j1, int j2, int j3) noexcept {
  auto mod3 = [](int x) { return ((x % 3) + 3) % 3; };
  return j1 + j2 + j3 == 0 && mod3(j1) == mod3(j2) && mod3(j2) == mod3(j3);
}

std::vector<HexIndex> index_shell(int nu) {
  if (nu < 0) throw std::invalid_argument("index_shell: negative shell number");
  std::vector<HexIndex> shell;
  shell.reserve(nu == 0 ? 1 : static_cast<std::size_t>(6 * nu));
  for (int k1 = -nu; k1 <= nu; ++k1) {
    // |k2| <= nu and |k1 + k2| <= nu.
    const int lo = std::max(-nu, -nu - k1);
    const int hi = std::min(nu, nu - k1);
    for (int k2 = lo; k2 <= hi; ++k2) {
      const int k3 = -k1 - k2;
      if (std::max({std::abs(k1), std::abs(k2), std::abs(k3)}) == nu) {
        shell.push_back(HexIndex::from_pair(k1, k2));
      }
    }
  }
  return shell;
}

}  // namespace hexsum
