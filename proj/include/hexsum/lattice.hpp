#pragma once

// Geometry of the hexagonal lattice in homogeneous coordinates.
//
// A point of the plane is a triple t = (t1, t2, t3) with t1 + t2 + t3 = 0.
// The fundamental domain Omega is the regular hexagon
//   -1 <= t1 < 1,  -1 <= t2 < 1,  -1 < t3 <= 1
// and functions are periodic under shifts j with j1 = j2 = j3 (mod 3).

#include <array>
#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

namespace hexsum {

/// Integer frequency triple with zero sum.
class HexIndex {
public:
  HexIndex() = default;
  /// Throws std::invalid_argument unless k1 + k2 + k3 == 0.
  HexIndex(int k1, int k2, int k3);
  /// Builds the triple (k1, k2, -k1-k2).
  static HexIndex from_pair(int k1, int k2) noexcept;

  int k1() const noexcept { return k_[0]; }
  int k2() const noexcept { return k_[1]; }
  int k3() const noexcept { return k_[2]; }
  int operator[](int j) const noexcept { return k_[static_cast<std::size_t>(j)]; }

  /// Shell number |k| = max |k_j|.
  int degree() const noexcept;
  HexIndex operator-() const noexcept { return from_pair(-k_[0], -k_[1]); }

  friend bool operator==(const HexIndex&, const HexIndex&) = default;

private:
  std::array<int, 3> k_{0, 0, 0};
};

/// Shell-major order: by degree, then lexicographic on (k1, k2).
struct ShellOrder {
  bool operator()(const HexIndex& a, const HexIndex& b) const noexcept {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) return da < db;
    if (a.k1() != b.k1()) return a.k1() < b.k1();
    return a.k2() < b.k2();
  }
};

/// Real point of the plane in homogeneous coordinates.
class HexPoint {
public:
  static constexpr double kSumTolerance = 1e-12;

  HexPoint() = default;
  /// Throws std::invalid_argument if |t1 + t2 + t3| > kSumTolerance.
  HexPoint(double t1, double t2, double t3);
  /// Builds (t1, t2, -t1-t2).
  static HexPoint from_pair(double t1, double t2) noexcept;

  double t1() const noexcept { return t_[0]; }
  double t2() const noexcept { return t_[1]; }
  double t3() const noexcept { return t_[2]; }

  // Angles entering the one-dimensional Poisson kernels of the product form.
  double z1() const noexcept;
  double z2() const noexcept;
  double z3() const noexcept;

  friend bool operator==(const HexPoint&, const HexPoint&) = default;

private:
  std::array<double, 3> t_{0.0, 0.0, 0.0};
};

struct LatticeConstants {
  /// Generator matrix, row-major.
  std::array<std::array<double, 2>, 2> H;
  /// Area of Omega in dt1 dt2 measure.
  double omega_area;
  /// dx = jacobian * dt1 dt2.
  double jacobian;
};

const LatticeConstants& lattice_constants() noexcept;

std::pair<double, double> to_cartesian(const HexPoint& t) noexcept;
HexPoint from_cartesian(double x1, double x2) noexcept;

bool is_in_omega(const HexPoint& t) noexcept;

/// Representative of t in Omega modulo the period lattice.
///
/// Exact for points away from the boundary of Omega. A point within a few ulps
/// of an edge may come back just outside the half-open domain; in that case the
/// closest candidate is returned. fold is idempotent in both cases.
HexPoint fold(const HexPoint& t) noexcept;

/// Shift t by an integer period; the caller guarantees j1 = j2 = j3 (mod 3).
HexPoint shift(const HexPoint& t, const HexIndex& j) noexcept;

/// True if j is a lattice period (all components congruent mod 3).
bool is_period(int j1, int j2, int j3) noexcept;

/// The shell J_nu in lexicographic (k1, k2) order. Size 1 for nu = 0, 6 nu otherwise.
std::vector<HexIndex> index_shell(int nu);

}  // namespace hexsum
