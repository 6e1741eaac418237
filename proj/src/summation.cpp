#include "hexsum/summation.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "hexsum/parallel.hpp"
#include "hexsum/quadrature.hpp"

namespace hexsum {

namespace {

void check_rho(double rho, const char* who) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::invalid_argument(std::string(who) + ": rho must lie in [0, 1), got " + std::to_string(rho));
  }
}

double factorial(int n) noexcept {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct BinomialSplit {
  double head;  // sum_{j<r} C(nu,j) (1-rho)^j rho^(nu-j)
  double tail;  // sum_{j>=r}
};

// Terms of the binomial distribution with success probability 1 - rho, by the
// recurrence t_{j+1} = t_j (nu - j)/(j + 1) (1 - rho)/rho started at rho^nu.
// Falls back to log-space terms when rho^nu underflows.
BinomialSplit binomial_split(int nu, int r, double rho) {
  if (rho == 0.0) return {0.0, 1.0};
  const double q = 1.0 - rho;
  std::vector<double> terms(static_cast<std::size_t>(nu) + 1);
  const double start = std::pow(rho, nu);
  if (start > 1e-280) {
    double t = start;
    const double ratio = q / rho;
    for (int j = 0; j <= nu; ++j) {
      terms[static_cast<std::size_t>(j)] = t;
      t *= (nu - j) / (j + 1.0) * ratio;
    }
  } else {
    const double lq = std::log(q);
    const double lr = std::log(rho);
    for (int j = 0; j <= nu; ++j) {
      const double lc = std::lgamma(nu + 1.0) - std::lgamma(j + 1.0) - std::lgamma(nu - j + 1.0);
      terms[static_cast<std::size_t>(j)] = std::exp(lc + j * lq + (nu - j) * lr);
    }
  }
  BinomialSplit s{0.0, 0.0};
  for (int j = 0; j < r; ++j) s.head += terms[static_cast<std::size_t>(j)];
  for (int j = nu; j >= r; --j) s.tail += terms[static_cast<std::size_t>(j)];
  return s;
}

void check_lambda_args(int nu, int r, double rho) {
  if (nu < 0) throw std::invalid_argument("lambda_coeff: nu must be >= 0");
  if (r < 1) throw std::invalid_argument("lambda_coeff: r must be >= 1");
  check_rho(rho, "lambda_coeff");
}

using NormFn = std::function<double(const SpectralFunction&)>;

NormFn make_norm(double norm_p, const HexGrid& grid) {
  if (!(norm_p >= 1.0)) throw std::invalid_argument("norm exponent p must be >= 1");
  // Bandlimited functions have exact L2 norms from their coefficients.
  if (norm_p == 2.0) return spectral_l2_norm;
  return [norm_p, grid](const SpectralFunction& g) { return lp_norm(synthesize(g, grid), norm_p); };
}

}  // namespace

SummationParams::SummationParams(double rho_, int r_) : rho(rho_), r(r_) {
  check_rho(rho, "SummationParams");
  if (r < 1) throw std::invalid_argument("SummationParams: r must be >= 1, got " + std::to_string(r));
}

double lambda_coeff(int nu, int r, double rho) {
  check_lambda_args(nu, r, rho);
  if (nu < r) return 1.0;
  const auto s = binomial_split(nu, r, rho);
  return s.head <= 0.5 ? s.head : 1.0 - s.tail;
}

double lambda_complement(int nu, int r, double rho) {
  check_lambda_args(nu, r, rho);
  if (nu < r) return 0.0;
  const auto s = binomial_split(nu, r, rho);
  return s.tail <= 0.5 ? s.tail : 1.0 - s.head;
}

double falling_factorial(int nu, int n) noexcept {
  if (nu < n) return 0.0;
  double f = 1.0;
  for (int i = 0; i < n; ++i) f *= nu - i;
  return f;
}

SpectralFunction apply_operator(const SpectralFunction& f, const SummationParams& p) {
  return scale_shells(f, [&](int nu) { return lambda_coeff(nu, p.r, p.rho); });
}

SpectralFunction apply_operator_derivative_form(const SpectralFunction& f, const SummationParams& p) {
  SpectralFunction out(f.max_degree());
  out.set_real_valued(f.real_valued());
  double scale = 1.0;  // (1-rho)^k / k!
  for (int k = 0; k < p.r; ++k) {
    if (k > 0) scale *= (1.0 - p.rho) / k;
    out = out + poisson_derivative_spectral(f, p.rho, k) * scale;
  }
  return out;
}

SpectralFunction radial_derivative(const SpectralFunction& f, int n) {
  if (n < 1) throw std::invalid_argument("radial_derivative: order must be >= 1");
  return scale_shells(f, [n](int nu) { return falling_factorial(nu, n); });
}

SpectralFunction poisson_integral_spectral(const SpectralFunction& f, double rho) {
  check_rho(rho, "poisson_integral_spectral");
  return scale_shells(f, [rho](int nu) { return nu == 0 ? 1.0 : std::pow(rho, nu); });
}

SpectralFunction poisson_derivative_spectral(const SpectralFunction& f, double rho, int r) {
  check_rho(rho, "poisson_derivative_spectral");
  if (r < 0) throw std::invalid_argument("poisson_derivative_spectral: order must be >= 0");
  return scale_shells(f, [rho, r](int nu) {
    if (nu < r) return 0.0;
    return falling_factorial(nu, r) * (nu == r ? 1.0 : std::pow(rho, nu - r));
  });
}

SpectralFunction deviation_spectral(const SpectralFunction& f, const SummationParams& p) {
  return scale_shells(f, [&](int nu) { return lambda_complement(nu, p.r, p.rho); });
}

double spectral_l2_norm(const SpectralFunction& f) {
  std::vector<double> shells;
  int current = -1;
  for (const auto& [k, c] : f.entries()) {
    if (k.degree() != current) {
      shells.push_back(0.0);
      current = k.degree();
    }
    shells.back() += std::norm(c);
  }
  return std::sqrt(pairwise_sum(shells));
}

double deviation_norm(const SpectralFunction& f, const SummationParams& p, double norm_p, const HexGrid& grid) {
  return lp_norm(synthesize(deviation_spectral(f, p), grid), norm_p);
}

double deviation_norm_l2(const SpectralFunction& f, const SummationParams& p) {
  return spectral_l2_norm(deviation_spectral(f, p));
}

double m_p(const SpectralFunction& f, double rho, int r, double norm_p, const HexGrid& grid) {
  check_rho(rho, "m_p");
  if (r < 1) throw std::invalid_argument("m_p: order must be >= 1");
  const auto g = scale_shells(f, [rho, r](int nu) { return falling_factorial(nu, r) * std::pow(rho, nu); });
  return lp_norm(synthesize(g, grid), norm_p);
}

KfunEstimate kfun_estimate(const SpectralFunction& f, double delta, int n, double norm_p, const HexGrid& grid) {
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw std::invalid_argument("kfun_estimate: delta must lie in (0, 1/2], got " + std::to_string(delta));
  }
  if (n < 1) throw std::invalid_argument("kfun_estimate: n must be >= 1");
  const NormFn norm = make_norm(norm_p, grid);
  const double dn = std::pow(delta, n);

  KfunEstimate est{delta, n, 0.0, 0.0, "", {}};
  auto add = [&](std::string label, const SpectralFunction& h) {
    const double distance = norm(f - h);
    const double smooth = dn * norm(radial_derivative(h, n));
    est.candidates.push_back({std::move(label), distance, smooth});
  };

  add("zero", SpectralFunction(f.max_degree()));
  add("identity", f);
  for (int j = -2; j <= 2; ++j) {
    const double zeta = 1.0 - delta * std::ldexp(1.0, j);
    if (zeta < 0.0 || zeta >= 1.0) continue;
    add("A(zeta=" + std::to_string(zeta) + ")", apply_operator(f, SummationParams(zeta, n)));
  }
  // S_m(f) = f once m reaches the support degree.
  for (int m = 0; m < f.support_degree(); ++m) add("S_" + std::to_string(m), partial_sum(f, m));

  std::size_t best = 0;
  for (std::size_t i = 1; i < est.candidates.size(); ++i) {
    if (est.candidates[i].value() < est.candidates[best].value()) best = i;
  }
  est.upper = est.candidates[best].value();
  est.argmin_candidate = est.candidates[best].label;

  const double rho = 1.0 - delta;
  const auto g = scale_shells(f, [rho, n](int nu) { return falling_factorial(nu, n) * std::pow(rho, nu); });
  est.lower_proxy = dn * norm(g);
  return est;
}

RemainderCheck remainder_coefficient_check(int nu, int r, double rho) {
  if (r < 2) throw std::invalid_argument("remainder_coefficient_check: r must be >= 2");
  if (nu < r) throw std::invalid_argument("remainder_coefficient_check: nu must be >= r");
  check_rho(rho, "remainder_coefficient_check");
  const double scale = falling_factorial(nu, r) / factorial(r - 1);
  const double rhs = integrate_adaptive(
      [&](double zeta) { return scale * std::pow(1.0 - zeta, r - 1) * std::pow(zeta, nu - r); }, rho, 1.0);
  return {lambda_complement(nu, r, rho), rhs};
}

SpectralFunction remainder_integral_spectral(const SpectralFunction& f, const SummationParams& p, int zeta_nodes) {
  if (p.r < 2) throw std::invalid_argument("remainder_integral: r must be >= 2");
  if (zeta_nodes < 16) throw std::invalid_argument("remainder_integral: need at least 16 zeta nodes");
  const QuadratureRule rule = gauss_legendre_unit(zeta_nodes);
  const double h = 1.0 - p.rho;
  const double front = std::pow(h, p.r) / factorial(p.r - 1);
  // zeta = 1 - (1 - rho) u turns the integral over [rho, 1] into one over [0, 1]
  // with integrand u^(r-1) d^r/dzeta^r P(f)(zeta, .).
  return scale_shells(f, [&](int nu) {
    if (nu < p.r) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = rule.nodes[i];
      s += rule.weights[i] * std::pow(u, p.r - 1) * std::pow(1.0 - h * u, nu - p.r);
    }
    return front * falling_factorial(nu, p.r) * s;
  });
}

double remainder_integral_norm(const SpectralFunction& f, const SummationParams& p, double norm_p,
                               const HexGrid& grid, int zeta_nodes) {
  return lp_norm(synthesize(remainder_integral_spectral(f, p, zeta_nodes), grid), norm_p);
}

}  // namespace hexsum
