#include "hexsum/poisson.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hexsum {

namespace {

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::invalid_argument("rho must lie in [0, 1), got " + std::to_string(rho));
  }
}

void check_order(int r) {
  if (r < 0 || r > kMaxDerivativeOrder) {
    throw std::invalid_argument("derivative order must lie in [0, " + std::to_string(kMaxDerivativeOrder) +
                                "], got " + std::to_string(r));
  }
}

double factorial(int n) noexcept {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

template <typename Make>
std::array<RationalCoeff, kMaxDerivativeOrder + 1> derivative_table(Make make) {
  std::vector<RationalCoeff> d{make()};
  for (int j = 1; j <= kMaxDerivativeOrder; ++j) d.push_back(d.back().derivative());
  return {d[0], d[1], d[2], d[3], d[4], d[5], d[6]};
}

const std::array<RationalCoeff, kMaxDerivativeOrder + 1>& a_table() {
  static const auto table = derivative_table([] {
    // (1 - rho^3) / (1 + rho)^3
    return RationalCoeff(Polynomial({1, 0, 0, -1}), Polynomial({1, 1}), 3);
  });
  return table;
}

const std::array<RationalCoeff, kMaxDerivativeOrder + 1>& b_table() {
  static const auto table = derivative_table([] {
    // rho / (1 + rho)^2
    return RationalCoeff(Polynomial({0, 1}), Polynomial({1, 1}), 2);
  });
  return table;
}

}  // namespace

KernelEval::KernelEval(double rho_, int r_) : rho(rho_), r(r_) {
  check_rho(rho);
  check_order(r);
}

DerivativeArray classical_kernel_derivs(double rho, double z, int max_order) {
  check_rho(rho);
  check_order(max_order);
  DerivativeArray d{};
  const double s = std::sin(0.5 * z);
  // |1 - rho e^{iz}|^2 without cancellation near rho -> 1, z -> 0.
  const double q = (1.0 - rho) * (1.0 - rho) + 4.0 * rho * s * s;
  d[0] = (1.0 - rho * rho) / q;
  if (max_order == 0) return d;

  // d^r/drho^r P_rho(z) = 2 Re[ r! e^{irz} / (1 - rho e^{iz})^{r+1} ],  r >= 1.
  const cplx w = std::polar(1.0, z);
  const cplx u = 1.0 / cplx((1.0 - rho) + 2.0 * rho * s * s, -rho * std::sin(z));
  const cplx wu = w * u;
  cplx c = u;
  for (int r = 1; r <= max_order; ++r) {
    c *= static_cast<double>(r) * wu;
    d[static_cast<std::size_t>(r)] = 2.0 * c.real();
  }
  return d;
}

double classical_kernel_deriv(double rho, double z, int r) {
  return classical_kernel_derivs(rho, z, r)[static_cast<std::size_t>(r)];
}

const RationalCoeff& kernel_coeff_a() { return a_table()[0]; }
const RationalCoeff& kernel_coeff_b() { return b_table()[0]; }

const RationalCoeff& kernel_coeff_a_derivative(int j) {
  check_order(j);
  return a_table()[static_cast<std::size_t>(j)];
}

const RationalCoeff& kernel_coeff_b_derivative(int j) {
  check_order(j);
  return b_table()[static_cast<std::size_t>(j)];
}

double hex_kernel_closed(double rho, const HexPoint& t) {
  check_rho(rho);
  const double p1 = classical_kernel_derivs(rho, t.z1(), 0)[0];
  const double p2 = classical_kernel_derivs(rho, t.z2(), 0)[0];
  const double p3 = classical_kernel_derivs(rho, t.z3(), 0)[0];
  const double a = kernel_coeff_a()(rho);
  const double b = kernel_coeff_b()(rho);
  return a * p1 * p2 * p3 + b * (p1 * p2 + p1 * p3 + p2 * p3);
}

cplx shell_sum(int nu, const HexPoint& t) noexcept {
  if (nu <= 0) return nu == 0 ? cplx{1.0, 0.0} : cplx{};
  // Edge starts (vertices of shell 1, scaled by nu) and steps along each edge.
  static constexpr int kStart[6][2] = {{1, -1}, {1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}};
  static constexpr int kStep[6][2] = {{0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}};
  cplx total{};
  for (int e = 0; e < 6; ++e) {
    cplx cur = phi(HexIndex::from_pair(nu * kStart[e][0], nu * kStart[e][1]), t);
    const cplx step = phi(HexIndex::from_pair(kStep[e][0], kStep[e][1]), t);
    cplx edge{};
    for (int j = 0; j < nu; ++j) {
      edge += cur;
      cur *= step;
    }
    total += edge;
  }
  return total;
}

double series_tail_bound(double rho, int cutoff) noexcept {
  const double m = cutoff + 1.0;
  return 6.0 * std::pow(rho, m) * (m * (1.0 - rho) + rho) / ((1.0 - rho) * (1.0 - rho));
}

SeriesValue hex_kernel_series(double rho, const HexPoint& t, int cutoff) {
  check_rho(rho);
  if (cutoff < 0) throw std::invalid_argument("hex_kernel_series: negative cutoff");
  cplx s{};
  for (int nu = 0; nu <= cutoff; ++nu) {
    const double w = std::pow(rho, nu);
    if (w == 0.0 && nu > 0) break;
    s += w * shell_sum(nu, t);
  }
  return {s, series_tail_bound(rho, cutoff)};
}

KernelDerivative::KernelDerivative(KernelEval eval) : rho_(eval.rho), r_(eval.r) {
  for (int j = 0; j <= r_; ++j) {
    a_[static_cast<std::size_t>(j)] = kernel_coeff_a_derivative(j)(rho_);
    b_[static_cast<std::size_t>(j)] = kernel_coeff_b_derivative(j)(rho_);
  }
  const double rf = factorial(r_);
  for (int j = 0; j <= r_; ++j) {
    for (int r1 = 0; j + r1 <= r_; ++r1) {
      for (int r2 = 0; j + r1 + r2 <= r_; ++r2) {
        const int r3 = r_ - j - r1 - r2;
        triple_.push_back({rf / (factorial(j) * factorial(r1) * factorial(r2) * factorial(r3)), j, r1, r2, r3});
      }
      const int r2 = r_ - j - r1;
      pair_.push_back({rf / (factorial(j) * factorial(r1) * factorial(r2)), j, r1, r2});
    }
  }
}

double KernelDerivative::operator()(const HexPoint& t) const noexcept {
  const DerivativeArray d1 = classical_kernel_derivs(rho_, t.z1(), r_);
  const DerivativeArray d2 = classical_kernel_derivs(rho_, t.z2(), r_);
  const DerivativeArray d3 = classical_kernel_derivs(rho_, t.z3(), r_);
  auto at = [](const DerivativeArray& d, int i) { return d[static_cast<std::size_t>(i)]; };
  double s = 0.0;
  for (const auto& term : triple_) {
    s += term.coeff * at(a_, term.j) * at(d1, term.r1) * at(d2, term.r2) * at(d3, term.r3);
  }
  for (const auto& term : pair_) {
    const double pairs = at(d1, term.r1) * at(d2, term.r2) + at(d1, term.r1) * at(d3, term.r2) +
                         at(d2, term.r1) * at(d3, term.r2);
    s += term.coeff * at(b_, term.j) * pairs;
  }
  return s;
}

double hex_kernel_deriv(double rho, const HexPoint& t, int r) {
  const KernelEval eval(rho, r);
  if (r == 0) return hex_kernel_closed(rho, t);
  return KernelDerivative(eval)(t);
}

GridChoice auto_grid_size(double rho) {
  check_rho(rho);
  const double wanted = std::ceil(kPeakSamples / (1.0 - rho));
  if (wanted > kMaxAutoGrid) return {kMaxAutoGrid, true};
  return {std::max(kMinAutoGrid, static_cast<int>(wanted)), false};
}

namespace {

bool underresolved(double rho, const HexGrid& grid) {
  return grid.n() < std::ceil(kPeakSamples / (1.0 - rho));
}

std::size_t expected_orders(ProductIntegral which) {
  switch (which) {
    case ProductIntegral::I1: return 1;
    case ProductIntegral::I2: return 2;
    case ProductIntegral::I3: return 3;
  }
  return 0;
}

void check_orders(ProductIntegral which, std::span<const int> orders) {
  if (orders.size() != expected_orders(which)) {
    throw std::invalid_argument("product_integral: expected " + std::to_string(expected_orders(which)) +
                                " derivative orders, got " + std::to_string(orders.size()));
  }
  for (int r : orders) check_order(r);
}

}  // namespace

IntegralResult bernstein_integral(double rho, int r, const HexGrid& grid) {
  const KernelDerivative deriv(KernelEval(rho, r));
  const double value = grid_average(grid, [&](const HexPoint& t) { return std::abs(deriv(t)); });
  return {value, grid.n(), underresolved(rho, grid)};
}

IntegralResult product_integral(double rho, ProductIntegral which, std::span<const int> orders, const HexGrid& grid) {
  check_rho(rho);
  check_orders(which, orders);
  const std::vector<int> ord(orders.begin(), orders.end());
  const double value = grid_average(grid, [&](const HexPoint& t) {
    const double z[3] = {t.z1(), t.z2(), t.z3()};
    double prod = 1.0;
    for (std::size_t j = 0; j < ord.size(); ++j) prod *= classical_kernel_deriv(rho, z[j], ord[j]);
    return std::abs(prod);
  });
  return {value, grid.n(), underresolved(rho, grid)};
}

double product_integral_bound(double rho, ProductIntegral which, std::span<const int> orders) {
  check_rho(rho);
  check_orders(which, orders);
  int r = 0;
  double fact = 1.0;
  for (int o : orders) {
    r += o;
    fact *= factorial(o);
  }
  switch (which) {
    case ProductIntegral::I1: return 2.0 * fact / std::pow(1.0 - rho, r);
    case ProductIntegral::I2: return 4.0 * fact / std::pow(1.0 - rho, r);
    case ProductIntegral::I3: return 8.0 * fact / std::pow(1.0 - rho, r + 1);
  }
  return 0.0;
}

}  // namespace hexsum
