#pragma once

// Trigonometric monomials on the hexagon, sampling grids, and the passage
// between grid values and Fourier coefficients.

#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "hexsum/lattice.hpp"

namespace hexsum {

using cplx = std::complex<double>;

/// phi_k(t) = exp((2 pi i / 3) k.t).
cplx phi(const HexIndex& k, const HexPoint& t) noexcept;

/// Uniform N x N rule over one period: (t1, t2) = (3 m1 / N, 3 m2 / N), folded into Omega.
///
/// The square [0,3)^2 covers Omega exactly three times, so equal weights give the
/// normalized integral over Omega. Averages of trigonometric polynomials are exact
/// when every frequency difference (2 k1 + k2, k1 + 2 k2) is below N in modulus,
/// which holds for degree-d polynomials with 4 d < N.
class HexGrid {
public:
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_); }
  double weight() const noexcept { return 1.0 / static_cast<double>(size()); }

  /// Point index i = m1 * N + m2.
  HexPoint point(std::size_t i) const noexcept;
  int m1(std::size_t i) const noexcept { return static_cast<int>(i / static_cast<std::size_t>(n_)); }
  int m2(std::size_t i) const noexcept { return static_cast<int>(i % static_cast<std::size_t>(n_)); }
  /// Materialized point list (only sensible for moderate N).
  std::vector<HexPoint> points() const;

  /// exp(2 pi i j / N) for any integer j.
  cplx root(long long j) const noexcept;
  /// phi_k at grid point i, evaluated through the exact root-of-unity table.
  cplx phi_at(const HexIndex& k, std::size_t i) const noexcept;

  friend HexGrid make_grid(int n);

private:
  explicit HexGrid(int n);
  int n_ = 0;
  std::shared_ptr<const std::vector<cplx>> roots_;
};

/// Throws std::invalid_argument for n < 4.
HexGrid make_grid(int n);

/// Complex samples index-aligned with grid points.
struct GridFunction {
  HexGrid grid;
  std::vector<cplx> values;

  GridFunction(HexGrid g, std::vector<cplx> v);
  GridFunction operator*(cplx c) const;
  GridFunction operator-(const GridFunction& other) const;
};

/// Finite set of Fourier coefficients, iterated shell by shell.
class SpectralFunction {
public:
  using Map = std::map<HexIndex, cplx, ShellOrder>;

  explicit SpectralFunction(int max_degree = 0);

  int max_degree() const noexcept { return max_degree_; }
  const Map& entries() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Throws std::invalid_argument if degree(k) > max_degree.
  void set(const HexIndex& k, cplx value);
  void add(const HexIndex& k, cplx value);
  cplx coeff(const HexIndex& k) const noexcept;

  /// Highest degree carrying a nonzero coefficient, -1 for the zero function.
  int support_degree() const noexcept;

  /// Optional reality flag; when set, validate() enforces coeff(-k) = conj(coeff(k)).
  bool real_valued() const noexcept { return real_valued_; }
  void set_real_valued(bool flag) noexcept { real_valued_ = flag; }
  bool is_conjugate_symmetric(double tol = 1e-12) const noexcept;
  void validate(double tol = 1e-12) const;

  SpectralFunction operator+(const SpectralFunction& other) const;
  SpectralFunction operator-(const SpectralFunction& other) const;
  SpectralFunction operator*(cplx c) const;

private:
  int max_degree_ = 0;
  bool real_valued_ = false;
  Map coeffs_;
};

/// Multiplies every coefficient on shell nu by multiplier(nu). Entries whose
/// multiplier is exactly zero are dropped.
SpectralFunction scale_shells(const SpectralFunction& f, const std::function<double(int)>& multiplier);

/// Partial sum S_m(f): all shells nu <= m.
SpectralFunction partial_sum(const SpectralFunction& f, int m);

/// Largest |coeff difference| over the union of supports.
double max_coeff_difference(const SpectralFunction& a, const SpectralFunction& b) noexcept;

/// Sum of coeff(k) phi_k(t), shell-major in canonical order.
cplx synthesize_at(const SpectralFunction& f, const HexPoint& t) noexcept;

/// Values of f at every grid point.
///
/// Coefficients are binned by their grid frequency (2k1+k2, k1+2k2) mod N and the
/// two axes are summed one after the other. On the grid this is the same sum as
/// synthesize_at, arranged as two one-dimensional passes.
GridFunction synthesize(const SpectralFunction& f, const HexGrid& grid);

struct AnalysisResult {
  SpectralFunction spectrum;
  /// Set when N < 4 max_degree + 1: coefficients may carry aliasing error.
  bool underresolved = false;
};

/// Grid averages of g conj(phi_k) for every degree(k) <= max_degree.
AnalysisResult analyze(const GridFunction& g, int max_degree);

/// Samples fn at every grid point.
GridFunction sample(const HexGrid& grid, const std::function<cplx(const HexPoint&)>& fn);

/// Grid average of fn without materializing the samples.
double grid_average(const HexGrid& grid, const std::function<double(const HexPoint&)>& fn);

cplx grid_mean(const GridFunction& g) noexcept;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Normalized discrete L_p norm; p = kInfinity gives the grid maximum, a lower
/// bound for the essential supremum. Throws std::invalid_argument for p < 1.
double lp_norm(const GridFunction& g, double p);

}  // namespace hexsum
