#include "hexsum/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hexsum {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Polynomial: coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Polynomial: coefficient overflow");
  return r;
}

}  // namespace

Polynomial::Polynomial(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() noexcept {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

double Polynomial::operator()(double x) const noexcept {
  double s = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + static_cast<double>(*it);
  return s;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<std::int64_t> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = checked_mul(c_[i], static_cast<std::int64_t>(i));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<std::int64_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = checked_add(r[i], o.c_[i]);
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<std::int64_t> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = checked_add(r[i + j], checked_mul(c_[i], o.c_[j]));
  }
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(std::int64_t s) const {
  std::vector<std::int64_t> r(c_);
  for (auto& x : r) x = checked_mul(x, s);
  return Polynomial(std::move(r));
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("Polynomial::pow: negative exponent");
  Polynomial r({1});
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::string Polynomial::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += c_[i] < 0 ? " - " : " + ";
    else if (c_[i] < 0) s += "-";
    s += std::to_string(std::llabs(c_[i]));
    if (i >= 1) s += "*x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

RationalCoeff::RationalCoeff(Polynomial numerator, Polynomial base, int power)
    : num_(std::move(numerator)), base_(std::move(base)), power_(power) {
  if (base_.is_zero()) throw std::invalid_argument("RationalCoeff: zero denominator");
  if (power_ < 0) throw std::invalid_argument("RationalCoeff: negative power");
}

double RationalCoeff::operator()(double rho) const noexcept {
  return num_(rho) / std::pow(base_(rho), power_);
}

RationalCoeff RationalCoeff::derivative() const {
  Polynomial n = num_.derivative() * base_ - num_ * base_.derivative() * power_;
  return {std::move(n), base_, power_ + 1};
}

}  // namespace hexsum
