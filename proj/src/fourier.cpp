#include "hexsum/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hexsum/parallel.hpp"

namespace hexsum {

namespace {

long long positive_mod(long long x, long long n) noexcept {
  const long long r = x % n;
  return r < 0 ? r + n : r;
}

// Grid frequencies of phi_k: k.t = (2k1 + k2) t1 + (k1 + 2k2) t2.
long long freq_a(const HexIndex& k) noexcept { return 2LL * k.k1() + k.k2(); }
long long freq_b(const HexIndex& k) noexcept { return static_cast<long long>(k.k1()) + 2LL * k.k2(); }

}  // namespace

cplx phi(const HexIndex& k, const HexPoint& t) noexcept {
  const double dot = k.k1() * t.t1() + k.k2() * t.t2() + k.k3() * t.t3();
  return std::polar(1.0, 2.0 * std::numbers::pi / 3.0 * dot);
}

HexGrid::HexGrid(int n) : n_(n) {
  auto roots = std::make_shared<std::vector<cplx>>(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    (*roots)[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
  }
  roots_ = std::move(roots);
}

HexGrid make_grid(int n) {
  if (n < 4) throw std::invalid_argument("make_grid: n must be at least 4, got " + std::to_string(n));
  return HexGrid(n);
}

HexPoint HexGrid::point(std::size_t i) const noexcept {
  const double h = 3.0 / n_;
  return fold(HexPoint::from_pair(h * m1(i), h * m2(i)));
}

std::vector<HexPoint> HexGrid::points() const {
  std::vector<HexPoint> pts(size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = point(i);
  return pts;
}

cplx HexGrid::root(long long j) const noexcept {
  return (*roots_)[static_cast<std::size_t>(positive_mod(j, n_))];
}

cplx HexGrid::phi_at(const HexIndex& k, std::size_t i) const noexcept {
  return root(freq_a(k) * m1(i) + freq_b(k) * m2(i));
}

GridFunction::GridFunction(HexGrid g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("GridFunction: value count does not match grid size");
  }
}

GridFunction GridFunction::operator*(cplx c) const {
  std::vector<cplx> out(values);
  for (auto& v : out) v *= c;
  return {grid, std::move(out)};
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
  if (other.grid.n() != grid.n()) throw std::invalid_argument("GridFunction: grid mismatch");
  std::vector<cplx> out(values);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= other.values[i];
  return {grid, std::move(out)};
}

// --- SpectralFunction -------------------------------------------------------

SpectralFunction::SpectralFunction(int max_degree) : max_degree_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("SpectralFunction: negative max_degree");
}

void SpectralFunction::set(const HexIndex& k, cplx value) {
  if (k.degree() > max_degree_) {
    throw std::invalid_argument("SpectralFunction: index (" + std::to_string(k.k1()) + "," +
                                std::to_string(k.k2()) + "," + std::to_string(k.k3()) +
                                ") exceeds max_degree " + std::to_string(max_degree_));
  }
  coeffs_[k] = value;
}

void SpectralFunction::add(const HexIndex& k, cplx value) { set(k, coeff(k) + value); }

cplx SpectralFunction::coeff(const HexIndex& k) const noexcept {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? cplx{} : it->second;
}

int SpectralFunction::support_degree() const noexcept {
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (it->second != cplx{}) return it->first.degree();
  }
  return -1;
}

bool SpectralFunction::is_conjugate_symmetric(double tol) const noexcept {
  for (const auto& [k, c] : coeffs_) {
    if (std::abs(coeff(-k) - std::conj(c)) > tol) return false;
  }
  return true;
}

void SpectralFunction::validate(double tol) const {
  if (real_valued_ && !is_conjugate_symmetric(tol)) {
    throw std::invalid_argument("SpectralFunction: real_valued flag set but coefficients are not conjugate-symmetric");
  }
}

SpectralFunction SpectralFunction::operator+(const SpectralFunction& other) const {
  SpectralFunction out(std::max(max_degree_, other.max_degree_));
  out.coeffs_ = coeffs_;
  for (const auto& [k, c] : other.coeffs_) out.coeffs_[k] += c;
  out.real_valued_ = real_valued_ && other.real_valued_;
  return out;
}

SpectralFunction SpectralFunction::operator-(const SpectralFunction& other) const {
  return *this + other * cplx{-1.0, 0.0};
}

SpectralFunction SpectralFunction::operator*(cplx c) const {
  SpectralFunction out(*this);
  for (auto& [k, v] : out.coeffs_) v *= c;
  out.real_valued_ = real_valued_ && c.imag() == 0.0;
  return out;
}

SpectralFunction scale_shells(const SpectralFunction& f, const std::function<double(int)>& multiplier) {
  SpectralFunction out(f.max_degree());
  out.set_real_valued(f.real_valued());
  int current = -1;
  double m = 0.0;
  for (const auto& [k, c] : f.entries()) {
    if (k.degree() != current) {
      current = k.degree();
      m = multiplier(current);
    }
    if (m != 0.0) out.set(k, c * m);
  }
  return out;
}

SpectralFunction partial_sum(const SpectralFunction& f, int m) {
  return scale_shells(f, [m](int nu) { return nu <= m ? 1.0 : 0.0; });
}

double max_coeff_difference(const SpectralFunction& a, const SpectralFunction& b) noexcept {
  double d = 0.0;
  for (const auto& [k, c] : a.entries()) d = std::max(d, std::abs(c - b.coeff(k)));
  for (const auto& [k, c] : b.entries()) d = std::max(d, std::abs(c - a.coeff(k)));
  return d;
}

// --- grid transforms ----------------------------------------------------------

cplx synthesize_at(const SpectralFunction& f, const HexPoint& t) noexcept {
  cplx s{};
  for (const auto& [k, c] : f.entries()) s += c * phi(k, t);
  return s;
}

GridFunction synthesize(const SpectralFunction& f, const HexGrid& grid) {
  const long long n = grid.n();
  const auto un = static_cast<std::size_t>(n);

  // Bin by grid frequency, keeping canonical (shell-major) order inside each bin.
  std::map<long long, std::vector<std::pair<long long, cplx>>> rows;
  for (const auto& [k, c] : f.entries()) {
    const long long a = positive_mod(freq_a(k), n);
    const long long b = positive_mod(freq_b(k), n);
    auto& row = rows[a];
    auto it = std::find_if(row.begin(), row.end(), [b](const auto& e) { return e.first == b; });
    if (it == row.end()) {
      row.emplace_back(b, c);
    } else {
      it->second += c;
    }
  }

  // Pass 1: partial[a][m2] = sum_b C[a][b] w^(b m2).
  std::vector<long long> a_values;
  a_values.reserve(rows.size());
  for (const auto& [a, row] : rows) a_values.push_back(a);
  std::vector<cplx> partial(a_values.size() * un);
  parallel_for(a_values.size(), [&](std::size_t ia) {
    const auto& row = rows.at(a_values[ia]);
    for (std::size_t m2 = 0; m2 < un; ++m2) {
      cplx s{};
      for (const auto& [b, c] : row) s += c * grid.root(b * static_cast<long long>(m2));
      partial[ia * un + m2] = s;
    }
  });

  // Pass 2: values[m1][m2] = sum_a partial[a][m2] w^(a m1).
  std::vector<cplx> values(grid.size());
  parallel_for(un, [&](std::size_t m1) {
    for (std::size_t m2 = 0; m2 < un; ++m2) {
      cplx s{};
      for (std::size_t ia = 0; ia < a_values.size(); ++ia) {
        s += partial[ia * un + m2] * grid.root(a_values[ia] * static_cast<long long>(m1));
      }
      values[m1 * un + m2] = s;
    }
  });
  return {grid, std::move(values)};
}

AnalysisResult analyze(const GridFunction& g, int max_degree) {
  const HexGrid& grid = g.grid;
  const long long n = grid.n();
  const auto un = static_cast<std::size_t>(n);

  std::vector<HexIndex> indices;
  for (int nu = 0; nu <= max_degree; ++nu) {
    for (const auto& k : index_shell(nu)) indices.push_back(k);
  }

  std::vector<long long> b_values;
  for (const auto& k : indices) b_values.push_back(positive_mod(freq_b(k), n));
  std::sort(b_values.begin(), b_values.end());
  b_values.erase(std::unique(b_values.begin(), b_values.end()), b_values.end());

  // Pass 1: partial[b][m1] = sum_m2 v[m1][m2] w^(-b m2).
  std::vector<cplx> partial(b_values.size() * un);
  parallel_for(b_values.size(), [&](std::size_t ib) {
    std::vector<cplx> buffer(un);
    for (std::size_t m1 = 0; m1 < un; ++m1) {
      for (std::size_t m2 = 0; m2 < un; ++m2) {
        buffer[m2] = g.values[m1 * un + m2] * grid.root(-b_values[ib] * static_cast<long long>(m2));
      }
      partial[ib * un + m1] = pairwise_sum(buffer);
    }
  });

  std::vector<cplx> coeffs(indices.size());
  parallel_for(indices.size(), [&](std::size_t ik) {
    const HexIndex& k = indices[ik];
    const long long a = freq_a(k);
    const auto ib = static_cast<std::size_t>(
        std::lower_bound(b_values.begin(), b_values.end(), positive_mod(freq_b(k), n)) - b_values.begin());
    std::vector<cplx> buffer(un);
    for (std::size_t m1 = 0; m1 < un; ++m1) {
      buffer[m1] = partial[ib * un + m1] * grid.root(-a * static_cast<long long>(m1));
    }
    coeffs[ik] = pairwise_sum(buffer) * grid.weight();
  });

  AnalysisResult result{SpectralFunction(max_degree), n < 4LL * max_degree + 1};
  for (std::size_t i = 0; i < indices.size(); ++i) result.spectrum.set(indices[i], coeffs[i]);
  return result;
}

GridFunction sample(const HexGrid& grid, const std::function<cplx(const HexPoint&)>& fn) {
  std::vector<cplx> values(grid.size());
  const auto un = static_cast<std::size_t>(grid.n());
  parallel_for(un, [&](std::size_t m1) {
    for (std::size_t m2 = 0; m2 < un; ++m2) {
      const std::size_t i = m1 * un + m2;
      values[i] = fn(grid.point(i));
    }
  });
  return {grid, std::move(values)};
}

double grid_average(const HexGrid& grid, const std::function<double(const HexPoint&)>& fn) {
  const auto un = static_cast<std::size_t>(grid.n());
  std::vector<double> row_sums(un);
  parallel_for(un, [&](std::size_t m1) {
    std::vector<double> row(un);
    for (std::size_t m2 = 0; m2 < un; ++m2) row[m2] = fn(grid.point(m1 * un + m2));
    row_sums[m1] = pairwise_sum(row);
  });
  return pairwise_sum(row_sums) * grid.weight();
}

cplx grid_mean(const GridFunction& g) noexcept { return pairwise_sum(g.values) * g.grid.weight(); }

double lp_norm(const GridFunction& g, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : g.values) m = std::max(m, std::abs(v));
    return m;
  }
  std::vector<double> powers(g.values.size());
  for (std::size_t i = 0; i < powers.size(); ++i) {
    powers[i] = p == 2.0 ? std::norm(g.values[i]) : std::pow(std::abs(g.values[i]), p);
  }
  const double mean = pairwise_sum(powers) * g.grid.weight();
  return p == 2.0 ? std::sqrt(mean) : std::pow(mean, 1.0 / p);
}

}  // namespace hexsum
