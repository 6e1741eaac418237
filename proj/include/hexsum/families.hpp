#pragma once

// Built-in test functions, each with a bound on the L2 norm of what the
// truncation left out.

#include <cstdint>
#include <random>
#include <string>

#include "hexsum/fourier.hpp"

namespace hexsum {

struct Family {
  std::string name;
  SpectralFunction f;
  /// L2 norm of the discarded coefficients (0 when nothing was cut).
  double l2_tail;
};

inline constexpr int kFamilyMaxDegree = 64;
inline constexpr double kAnalyticRho0 = 0.5;

/// The Poisson kernel P(rho0, .): coefficient rho0^|k| for |k| <= max_degree.
Family analytic_kernel_family(double rho0 = kAnalyticRho0, int max_degree = kFamilyMaxDegree);

/// coefficient (1 + nu)^(-s) / sqrt(6 nu) on shell nu >= 1, and 1 at k = 0.
Family shell_decay_family(int s, int max_degree = kFamilyMaxDegree);

/// coefficient 1 / (1 + |k|) for |k| <= degree.
Family polynomial_family(int degree);

/// The single basis function phi_k.
Family basis_family(const HexIndex& k);

/// Parses "analytic", "shell-decay:S", "polynomial:D" or "basis:K1,K2".
/// Throws std::invalid_argument for anything else.
Family family_by_name(const std::string& spec);

/// Coefficients with real and imaginary parts uniform in [-1, 1] on every
/// index of degree <= degree. real_valued enforces conjugate symmetry.
SpectralFunction random_spectral(std::mt19937_64& rng, int degree, bool real_valued = false);

}  // namespace hexsum
