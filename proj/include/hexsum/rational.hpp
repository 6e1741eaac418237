#pragma once

// Exact integer-coefficient polynomials and rational functions of rho, used for
// the rho-derivatives of the coefficients in the product form of the kernel.

#include <cstdint>
#include <string>
#include <vector>

namespace hexsum {

/// Integer polynomial, coefficients in increasing powers. Arithmetic throws
/// std::overflow_error instead of wrapping.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::int64_t> coeffs);

  const std::vector<std::int64_t>& coeffs() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }

  double operator()(double x) const noexcept;
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(std::int64_t s) const;
  Polynomial pow(int e) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
  std::string to_string() const;

private:
  void trim() noexcept;
  std::vector<std::int64_t> c_;
};

/// numerator(rho) / base(rho)^power. Differentiation keeps the base fixed:
///   (N / B^m)' = (N' B - m N B') / B^(m+1).
class RationalCoeff {
public:
  RationalCoeff(Polynomial numerator, Polynomial base, int power);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& base() const noexcept { return base_; }
  int power() const noexcept { return power_; }
  /// Expanded denominator base^power.
  Polynomial denominator() const { return base_.pow(power_); }

  double operator()(double rho) const noexcept;
  RationalCoeff derivative() const;

private:
  Polynomial num_;
  Polynomial base_;
  int power_;
};

}  // namespace hexsum
