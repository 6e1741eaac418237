#include "hexsum/families.hpp"

#include <cmath>
#include <stdexcept>

namespace hexsum {

namespace {

SpectralFunction shellwise(int max_degree, const std::function<double(int)>& coeff) {
  SpectralFunction f(max_degree);
  for (int nu = 0; nu <= max_degree; ++nu) {
    const double c = coeff(nu);
    for (const auto& k : index_shell(nu)) f.set(k, c);
  }
  f.set_real_valued(true);
  return f;
}

int parse_int(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("bad family parameter in '" + spec + "'");
  return value;
}

}  // namespace

Family analytic_kernel_family(double rho0, int max_degree) {
  if (!(rho0 > 0.0 && rho0 < 1.0)) throw std::invalid_argument("analytic family: rho0 must lie in (0, 1)");
  auto f = shellwise(max_degree, [rho0](int nu) { return std::pow(rho0, nu); });
  // sum_{nu > D} 6 nu q^nu with q = rho0^2, in closed form.
  const double q = rho0 * rho0;
  const double m = max_degree + 1.0;
  const double tail2 = 6.0 * std::pow(q, m) * (m * (1.0 - q) + q) / ((1.0 - q) * (1.0 - q));
  return {"analytic", std::move(f), std::sqrt(tail2)};
}

Family shell_decay_family(int s, int max_degree) {
  if (s < 1) throw std::invalid_argument("shell-decay family: s must be >= 1");
  auto f = shellwise(max_degree, [s](int nu) {
    if (nu == 0) return 1.0;
    return std::pow(1.0 + nu, -s) / std::sqrt(6.0 * nu);
  });
  // Each discarded shell contributes (1 + nu)^(-2s); bound the sum by an integral.
  const double tail2 = std::pow(max_degree + 1.0, 1.0 - 2.0 * s) / (2.0 * s - 1.0);
  return {"shell-decay:" + std::to_string(s), std::move(f), std::sqrt(tail2)};
}

Family polynomial_family(int degree) {
  if (degree < 0) throw std::invalid_argument("polynomial family: degree must be >= 0");
  auto f = shellwise(degree, [](int nu) { return 1.0 / (1.0 + nu); });
  return {"polynomial:" + std::to_string(degree), std::move(f), 0.0};
}

Family basis_family(const HexIndex& k) {
  SpectralFunction f(k.degree());
  f.set(k, 1.0);
  return {"basis:" + std::to_string(k.k1()) + "," + std::to_string(k.k2()), std::move(f), 0.0};
}

Family family_by_name(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "analytic" && arg.empty()) return analytic_kernel_family();
  if (head == "shell-decay" && !arg.empty()) return shell_decay_family(parse_int(arg, spec));
  if (head == "polynomial" && !arg.empty()) return polynomial_family(parse_int(arg, spec));
  if (head == "basis") {
    const auto comma = arg.find(',');
    if (comma != std::string::npos) {
      return basis_family(HexIndex::from_pair(parse_int(arg.substr(0, comma), spec), parse_int(arg.substr(comma + 1), spec)));
    }
  }
  throw std::invalid_argument("unknown family '" + spec +
                              "' (expected analytic, shell-decay:S, polynomial:D or basis:K1,K2)");
}

SpectralFunction random_spectral(std::mt19937_64& rng, int degree, bool real_valued) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpectralFunction f(degree);
  for (int nu = 0; nu <= degree; ++nu) {
    for (const auto& k : index_shell(nu)) {
      const double re = u(rng);
      const double im = u(rng);
      f.set(k, {re, im});
    }
  }
  if (!real_valued) return f;
  SpectralFunction g(degree);
  for (const auto& [k, c] : f.entries()) g.set(k, 0.5 * (c + std::conj(f.coeff(-k))));
  g.set_real_valued(true);
  return g;
}

}  // namespace hexsum
