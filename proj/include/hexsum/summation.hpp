#pragma once

// Taylor-Abel-Poisson means and the functionals built around them.
//
// A_{rho,r} multiplies the shell-nu coefficients of f by
//   lambda_{nu,r}(rho) = 1                                              nu < r
//                      = sum_{j<r} C(nu,j) (1-rho)^j rho^(nu-j)         nu >= r
// which keeps the first r Taylor terms (in 1 - rho) of the Poisson integral.
// Every operator here acts coefficientwise on a SpectralFunction; norms other
// than the exact spectral L2 norm go through synthesis on a HexGrid.

#include <string>
#include <utility>
#include <vector>

#include "hexsum/fourier.hpp"

namespace hexsum {

struct SummationParams {
  double rho;
  int r;
  /// Throws std::invalid_argument unless 0 <= rho < 1 and r >= 1.
  SummationParams(double rho, int r);
};

double lambda_coeff(int nu, int r, double rho);
/// 1 - lambda_{nu,r}(rho), evaluated without cancellation as the binomial upper tail.
double lambda_complement(int nu, int r, double rho);

/// nu! / (nu - n)!, zero for nu < n.
double falling_factorial(int nu, int n) noexcept;

SpectralFunction apply_operator(const SpectralFunction& f, const SummationParams& p);

/// sum_{k<r} (1-rho)^k / k! d^k/drho^k P(f)(rho, .), each derivative taken spectrally.
SpectralFunction apply_operator_derivative_form(const SpectralFunction& f, const SummationParams& p);

/// f^[n]: shell nu scaled by nu!/(nu-n)!, shells below n dropped. Requires n >= 1.
SpectralFunction radial_derivative(const SpectralFunction& f, int n);

/// P(f)(rho, .): shell nu scaled by rho^nu.
SpectralFunction poisson_integral_spectral(const SpectralFunction& f, double rho);

/// d^r/drho^r P(f)(rho, .): shell nu scaled by nu!/(nu-r)! rho^(nu-r).
SpectralFunction poisson_derivative_spectral(const SpectralFunction& f, double rho, int r);

/// f - A_{rho,r}(f).
SpectralFunction deviation_spectral(const SpectralFunction& f, const SummationParams& p);

/// (sum_k |coeff(k)|^2)^(1/2), accumulated shell by shell.
double spectral_l2_norm(const SpectralFunction& f);

/// || f - A_{rho,r}(f) ||_p on the grid.
double deviation_norm(const SpectralFunction& f, const SummationParams& p, double norm_p, const HexGrid& grid);
/// Exact L2 deviation from the coefficients.
double deviation_norm_l2(const SpectralFunction& f, const SummationParams& p);

/// M_p(rho, f, r) = || P(f)^[r](rho, .) ||_p = rho^r || d^r/drho^r P(f)(rho, .) ||_p.
double m_p(const SpectralFunction& f, double rho, int r, double norm_p, const HexGrid& grid);

struct KfunCandidate {
  std::string label;
  double distance;    // || f - h ||_p
  double smoothness;  // delta^n || h^[n] ||_p
  double value() const noexcept { return distance + smoothness; }
};

struct KfunEstimate {
  double delta;
  int n;
  double upper;
  double lower_proxy;
  std::string argmin_candidate;
  std::vector<KfunCandidate> candidates;
};

/// Bracket for K_n(delta, f)_p. upper minimizes over h in {0, f, A_{zeta,n}(f) for
/// zeta = 1 - delta 2^j (j = -2..2), S_m(f) for m <= max_degree}; lower_proxy is
/// delta^n M_p(1 - delta, f, n). For p = 2 all norms come from the coefficients,
/// otherwise from synthesis on the grid. Throws unless 0 < delta <= 1/2 and n >= 1.
KfunEstimate kfun_estimate(const SpectralFunction& f, double delta, int n, double norm_p, const HexGrid& grid);

struct RemainderCheck {
  double lhs;  // 1 - lambda_{nu,r}(rho)
  double rhs;  // (1/(r-1)!) int_rho^1 (1-zeta)^(r-1) nu!/(nu-r)! zeta^(nu-r) dzeta
};

/// Coefficient form of the remainder identity. Requires nu >= r >= 2.
RemainderCheck remainder_coefficient_check(int nu, int r, double rho);

/// || (1/(r-1)!) int_rho^1 (1-zeta)^(r-1) d^r/dzeta^r P(f)(zeta, .) dzeta ||_p, with the
/// zeta-integral done by Gauss-Legendre after zeta = 1 - (1-rho) u. Requires r >= 2
/// and zeta_nodes >= 16.
double remainder_integral_norm(const SpectralFunction& f, const SummationParams& p, double norm_p,
                               const HexGrid& grid, int zeta_nodes = 64);

/// The coefficients of the remainder integral, before synthesis.
SpectralFunction remainder_integral_spectral(const SpectralFunction& f, const SummationParams& p, int zeta_nodes = 64);

}  // namespace hexsum
