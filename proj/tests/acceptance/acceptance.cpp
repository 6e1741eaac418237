// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hexsum/experiments.hpp"
#include "hexsum/families.hpp"
#include "hexsum/poisson.hpp"
#include "hexsum/summation.hpp"
#include "oracles.hpp"

using namespace hexsum;

namespace {

// Tolerances, fixed here and nowhere else.
constexpr double kOrthoTol = 1e-12;
constexpr double kMeanTol = 1e-6;
constexpr double kSeriesTol = 1e-9;
constexpr double kProductRelTol = 1e-4;
constexpr double kRatioLow = 0.9;
constexpr double kRatioHigh = 1.1;
constexpr double kEquivalenceTol = 1e-12;
constexpr double kRemainderTol = 1e-10;
constexpr double kSlopeTol = 0.15;
constexpr double kConvolutionTol = 1e-8;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

HexPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(rng);
  const double b = u(rng);
  return fold(HexPoint::from_pair(a, b));
}

std::vector<double> tenths() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}; }

Outcome orthonormality() {
  const auto g = make_grid(64);
  std::vector<HexIndex> idx;
  for (int nu = 0; nu <= 8; ++nu) {
    for (const auto& k : index_shell(nu)) idx.push_back(k);
  }
  double worst = 0.0;
  for (const auto& k : idx) {
    for (const auto& l : idx) {
      cplx s{};
      for (std::size_t i = 0; i < g.size(); ++i) s += g.phi_at(k, i) * std::conj(g.phi_at(l, i));
      worst = std::max(worst, std::abs(s * g.weight() - (k == l ? 1.0 : 0.0)));
    }
  }
  return {worst <= kOrthoTol, fmt("max |<phi_k,phi_l> - delta| = %.2e", worst) + " over " +
                                  std::to_string(idx.size() * idx.size()) + " pairs"};
}

Outcome kernel_mean() {
  double worst = 0.0;
  std::string detail;
  for (double rho : {0.3, 0.6, 0.9}) {
    const auto g = make_grid(auto_grid_size(rho).n);
    const double m = grid_average(g, [rho](const HexPoint& t) { return hex_kernel_closed(rho, t); });
    worst = std::max(worst, std::abs(m - 1.0));
    detail += fmt("rho=%.1f", rho) + " n=" + std::to_string(g.n()) + fmt(" err=%.1e; ", std::abs(m - 1.0));
  }
  return {worst <= kMeanTol, detail};
}

Outcome closed_vs_series() {
  std::mt19937_64 rng(20240501);
  double worst = 0.0;
  const double tail = series_tail_bound(0.8, 400);
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_point(rng);
    worst = std::max(worst, std::abs(hex_kernel_series(0.8, t, 400).value - hex_kernel_closed(0.8, t)));
  }
  return {worst <= kSeriesTol && tail <= kSeriesTol,
          fmt("max diff %.2e", worst) + fmt(", certified tail %.2e", tail)};
}

Outcome product_values() {
  double worst = 0.0;
  const int o2[2] = {0, 0};
  const int o3[3] = {0, 0, 0};
  for (double rho : tenths()) {
    const auto g = make_grid(auto_grid_size(rho).n);
    const double i2 = product_integral(rho, ProductIntegral::I2, o2, g).value;
    const double i3 = product_integral(rho, ProductIntegral::I3, o3, g).value;
    const double e3 = (1.0 + rho * rho * rho) / (1.0 - rho * rho * rho);
    worst = std::max({worst, std::abs(i2 - 1.0), std::abs(i3 - e3) / e3});
  }
  return {worst <= kProductRelTol, fmt("max relative error %.2e", worst)};
}

Outcome bernstein_shape() {
  bool ok = true;
  std::string detail;
  std::vector<HexGrid> grids;
  for (int k = 1; k <= 7; ++k) grids.push_back(make_grid(auto_grid_size(1.0 - std::ldexp(1.0, -k)).n));
  for (int r = 1; r <= 3; ++r) {
    std::vector<double> scaled;
    for (int k = 1; k <= 7; ++k) {
      const double rho = 1.0 - std::ldexp(1.0, -k);
      scaled.push_back(bernstein_integral(rho, r, grids[static_cast<std::size_t>(k - 1)]).value * std::pow(1.0 - rho, r));
    }
    double c_emp = 0.0;
    for (double s : scaled) {
      ok = ok && std::isfinite(s);
      c_emp = std::max(c_emp, s);
    }
    const double ratio = scaled[6] / scaled[5];
    ok = ok && ratio >= kRatioLow && ratio <= kRatioHigh;
    detail += "r=" + std::to_string(r) + fmt(" C_emp=%.4f", c_emp) + fmt(" ratio=%.4f; ", ratio);
  }
  return {ok, detail + "n capped at " + std::to_string(kMaxAutoGrid)};
}

Outcome operator_equivalence() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<int> deg(0, 10);
    const auto f = random_spectral(rng, deg(rng));
    for (int r = 1; r <= 4; ++r) {
      for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const SummationParams p(rho, r);
        worst = std::max(worst, max_coeff_difference(apply_operator(f, p), apply_operator_derivative_form(f, p)));
      }
    }
  }
  return {worst <= kEquivalenceTol, fmt("max coefficient difference %.2e", worst)};
}

Outcome remainder_identity() {
  double worst = 0.0;
  int count = 0;
  for (int r = 2; r <= 4; ++r) {
    for (int nu = r; nu <= 30; ++nu) {
      for (double rho : tenths()) {
        const auto c = remainder_coefficient_check(nu, r, rho);
        worst = std::max(worst, std::abs(c.lhs - c.rhs));
        ++count;
      }
    }
  }
  return {worst <= kRemainderTol, fmt("max |lhs - rhs| = %.2e", worst) + " over " + std::to_string(count) + " cases"};
}

Outcome saturation() {
  std::mt19937_64 rng(11);
  int fixed_failures = 0;
  int damping_failures = 0;
  int cases = 0;
  for (int r = 1; r <= 6; ++r) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto poly = random_spectral(rng, r - 1);
      for (double rho : tenths()) {
        ++cases;
        if (max_coeff_difference(apply_operator(poly, SummationParams(rho, r)), poly) != 0.0) ++fixed_failures;
      }
    }
    for (int nu = r; nu <= 40; ++nu) {
      for (const auto& k : index_shell(nu)) {
        SpectralFunction f(nu);
        f.set(k, 1.0);
        for (double rho : tenths()) {
          ++cases;
          const double c = std::abs(apply_operator(f, SummationParams(rho, r)).coeff(k));
          if (!(c < 1.0)) ++damping_failures;
        }
      }
    }
  }
  return {fixed_failures == 0 && damping_failures == 0,
          std::to_string(cases) + " cases, " + std::to_string(fixed_failures) + " non-fixed polynomials, " +
              std::to_string(damping_failures) + " undamped basis functions"};
}

Outcome rate_law() {
  const auto fam = analytic_kernel_family();
  bool ok = true;
  std::string detail;
  double smallest = kInfinity;
  for (int r = 1; r <= 3; ++r) {
    std::vector<double> xs, ys;
    for (int k = 2; k <= 8; ++k) {
      const double rho = 1.0 - std::ldexp(1.0, -k);
      const double dev = deviation_norm_l2(fam.f, SummationParams(rho, r));
      smallest = std::min(smallest, dev);
      xs.push_back(std::log2(1.0 - rho));
      ys.push_back(std::log2(dev));
    }
    const auto fit = fit_slope(xs, ys);
    ok = ok && std::abs(fit.slope - r) <= kSlopeTol;
    detail += "r=" + std::to_string(r) + fmt(" slope=%.4f; ", fit.slope);
  }
  // The discarded tail must be negligible against every measured deviation.
  ok = ok && fam.l2_tail <= 1e-6 * smallest;
  return {ok, detail + fmt("tail %.1e", fam.l2_tail)};
}

Outcome convolution_oracle() {
  std::mt19937_64 rng(5);
  const auto f = random_spectral(rng, 5);
  const int n = 48;
  const double rho = 0.5;
  const auto conv = oracle::double_grid_convolution(
      f, n, [rho](double t1, double t2) { return hex_kernel_closed(rho, HexPoint::from_pair(t1, t2)); });
  const auto grid = make_grid(n);
  const auto spectral = synthesize(poisson_integral_spectral(f, rho), grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(spectral.values[i] - conv[i]));
  return {worst <= kConvolutionTol, fmt("max diff %.2e", worst) + " (t on n=48, s on n=96)"};
}

Outcome kfun_sandwich() {
  bool ok = true;
  std::string detail;
  for (int s = 2; s <= 4; ++s) {
    const auto fam = shell_decay_family(s);
    const auto grid = make_grid(spectral_grid_size(fam.f.max_degree()));
    for (int n = 1; n <= 2; ++n) {
      double c_emp = 0.0;
      double c_apriori = 0.0;
      std::vector<KfunEstimate> rows;
      for (int k = 1; k <= 8; ++k) {
        const double delta = std::ldexp(1.0, -k);
        rows.push_back(kfun_estimate(fam.f, delta, n, 2.0, grid));
        c_apriori = std::max(c_apriori, kfun_apriori_constant(delta, n, 2.0));
        const auto& e = rows.back();
        c_emp = std::max(c_emp, e.upper > 0.0 ? e.lower_proxy / e.upper : kInfinity);
      }
      for (const auto& e : rows) ok = ok && e.lower_proxy <= c_emp * e.upper && e.lower_proxy <= c_apriori * e.upper;
      ok = ok && std::isfinite(c_emp) && c_emp <= c_apriori;
      detail += "s=" + std::to_string(s) + ",n=" + std::to_string(n) + fmt(" C=%.3f", c_emp) + fmt("/%.3f; ", c_apriori);
    }
  }
  return {ok, detail + "(C_emp/a-priori bound, delta=2^-1..2^-8)"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"discrete orthonormality", orthonormality},
      {"kernel mean", kernel_mean},
      {"closed form vs series", closed_vs_series},
      {"product integrals I2,0 and I3,0", product_values},
      {"Bernstein-type bound shape", bernstein_shape},
      {"spectral vs derivative form", operator_equivalence},
      {"remainder coefficient identity", remainder_identity},
      {"saturation", saturation},
      {"rate law", rate_law},
      {"Poisson integral convolution oracle", convolution_oracle},
      {"K-functional sandwich", kfun_sandwich},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::printf("%s %2zu %s: %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
