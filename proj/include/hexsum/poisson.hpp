#pragma once

// Poisson kernels on the hexagon.
//
// The hexagonal kernel P(rho, t) = sum_nu rho^nu sum_{k in J_nu} phi_k(t) factors
// into classical one-dimensional kernels P_rho(z) = (1 - rho^2) / (1 - 2 rho cos z + rho^2):
//
//   P(rho, t) = a(rho) P_rho(z1) P_rho(z2) P_rho(z3)
//             + b(rho) (P_rho(z1) P_rho(z2) + P_rho(z1) P_rho(z3) + P_rho(z2) P_rho(z3))
//
// with a(rho) = (1 - rho^3) / (1 + rho)^3 and b(rho) = rho / (1 + rho)^2. The
// rho-derivatives of the closed form are obtained by the Leibniz rule; a and b
// are differentiated exactly as rational functions.

#include <array>
#include <span>
#include <vector>

#include "hexsum/fourier.hpp"
#include "hexsum/rational.hpp"

namespace hexsum {

/// Highest rho-derivative order supported by the closed-form tables.
inline constexpr int kMaxDerivativeOrder = 6;

/// Validated (rho, r) pair: 0 <= rho < 1, 0 <= r <= kMaxDerivativeOrder.
struct KernelEval {
  double rho;
  int r;
  KernelEval(double rho, int r);
};

using DerivativeArray = std::array<double, kMaxDerivativeOrder + 1>;

/// r-th rho-derivative of P_rho(z). Throws std::invalid_argument unless 0 <= rho < 1.
double classical_kernel_deriv(double rho, double z, int r);

/// Derivatives of orders 0..max_order of P_rho(z) in one pass; entries above max_order are zero.
DerivativeArray classical_kernel_derivs(double rho, double z, int max_order);

/// a(rho) and b(rho) as exact rational functions.
const RationalCoeff& kernel_coeff_a();
const RationalCoeff& kernel_coeff_b();
/// j-th derivative of a or b, 0 <= j <= kMaxDerivativeOrder.
const RationalCoeff& kernel_coeff_a_derivative(int j);
const RationalCoeff& kernel_coeff_b_derivative(int j);

/// Closed (product) form of P(rho, t).
double hex_kernel_closed(double rho, const HexPoint& t);

/// Sum of phi_k(t) over the shell J_nu, walking the six edges of the shell.
cplx shell_sum(int nu, const HexPoint& t) noexcept;

/// sum_{nu > cutoff} 6 nu rho^nu, an upper bound on the truncation error of the series.
double series_tail_bound(double rho, int cutoff) noexcept;

struct SeriesValue {
  cplx value;
  double tail_bound;
};

/// Truncated shell series of P(rho, t). The imaginary part is kept as a
/// consistency diagnostic (it vanishes in exact arithmetic).
SeriesValue hex_kernel_series(double rho, const HexPoint& t, int cutoff);

/// Evaluates d^r/drho^r P(rho, .) at many points for a fixed (rho, r).
class KernelDerivative {
public:
  explicit KernelDerivative(KernelEval eval);
  double operator()(const HexPoint& t) const noexcept;
  double rho() const noexcept { return rho_; }
  int order() const noexcept { return r_; }

private:
  struct TripleTerm {
    double coeff;
    int j, r1, r2, r3;
  };
  struct PairTerm {
    double coeff;
    int j, r1, r2;
  };
  double rho_;
  int r_;
  DerivativeArray a_{};
  DerivativeArray b_{};
  std::vector<TripleTerm> triple_;
  std::vector<PairTerm> pair_;
};

/// Exact r-th rho-derivative of the closed form. r = 0 returns hex_kernel_closed.
double hex_kernel_deriv(double rho, const HexPoint& t, int r);

struct GridChoice {
  int n;
  bool capped;
};

inline constexpr int kPeakSamples = 32;
inline constexpr int kMinAutoGrid = 64;
inline constexpr int kMaxAutoGrid = 4096;

/// n = max(64, ceil(32 / (1 - rho))), capped at 4096.
GridChoice auto_grid_size(double rho);

struct IntegralResult {
  double value;
  int grid_n;
  /// Grid coarser than ceil(32 / (1 - rho)) points per axis.
  bool underresolved;
};

/// Normalized integral of |d^r/drho^r P(rho, .)| over Omega.
IntegralResult bernstein_integral(double rho, int r, const HexGrid& grid);

enum class ProductIntegral { I1, I2, I3 };

/// Normalized integral of |prod_j d^{r_j} P_rho(z_j)| with z_1, z_2, z_3 in order.
/// orders must have 1, 2 or 3 entries for I1, I2, I3.
IntegralResult product_integral(double rho, ProductIntegral which, std::span<const int> orders, const HexGrid& grid);

/// Explicit upper bound for product_integral: 2 r!/(1-rho)^r, 4 r1! r2!/(1-rho)^r,
/// and 8 r1! r2! r3!/(1-rho)^(r+1).
double product_integral_bound(double rho, ProductIntegral which, std::span<const int> orders);

}  // namespace hexsum
