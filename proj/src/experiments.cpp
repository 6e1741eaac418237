#include "hexsum/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "hexsum/families.hpp"
#include "hexsum/lattice.hpp"
#include "hexsum/parallel.hpp"
#include "hexsum/poisson.hpp"
#include "hexsum/spectral_io.hpp"
#include "hexsum/summation.hpp"

namespace hexsum {

namespace {

constexpr double kKernelMeanTol = 1e-6;
constexpr double kParsevalTol = 1e-10;
constexpr double kRemainderTol = 1e-8;
constexpr double kRatioLow = 0.9;
constexpr double kRatioHigh = 1.1;
constexpr double kSlopeTol = 0.15;
constexpr double kOracleRelTol = 1e-10;
constexpr int kMinRatePoints = 4;
constexpr int kKernelSeriesPoints = 32;
constexpr int kMaxSeriesCutoff = 1500;

const char* status(bool ok) { return ok ? "pass" : "fail"; }

std::string p_label(double p) { return std::isinf(p) ? "inf" : format_double(p); }

struct Input {
  std::string name;
  SpectralFunction f;
  double l2_tail;
};

Input load_input(const ExperimentConfig& config) {
  if (config.input_path) {
    auto f = read_spectral_file(*config.input_path);
    return {*config.input_path, std::move(f), 0.0};
  }
  auto fam = family_by_name(config.family);
  return {fam.name, std::move(fam.f), fam.l2_tail};
}

HexGrid kernel_grid(const ExperimentConfig& config, double rho, bool& capped) {
  if (config.grid_n) {
    capped = false;
    return make_grid(*config.grid_n);
  }
  const auto choice = auto_grid_size(rho);
  capped = choice.capped;
  return make_grid(choice.n);
}

HexGrid spectral_grid(const ExperimentConfig& config, const SpectralFunction& f) {
  return make_grid(config.grid_n ? *config.grid_n : spectral_grid_size(std::max(f.max_degree(), 0)));
}

HexPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(rng);
  const double b = u(rng);
  return fold(HexPoint::from_pair(a, b));
}

// Runs body over every ladder point, keeping results in ladder order.
template <typename T>
std::vector<T> over_ladder(const std::vector<double>& values, const std::function<T(double)>& body) {
  std::vector<T> out(values.size());
  parallel_for(values.size(), [&](std::size_t i) { out[i] = body(values[i]); });
  return out;
}

// Binomial upper tail sum_{j=r}^{nu} C(nu,j) (1-rho)^j rho^(nu-j), term by term.
double naive_complement(int nu, int r, double rho) {
  if (nu < r) return 0.0;
  double s = 0.0;
  for (int j = r; j <= nu; ++j) {
    double c = 1.0;
    for (int i = 1; i <= j; ++i) c = c * (nu - j + i) / i;
    s += c * std::pow(1.0 - rho, j) * std::pow(rho, nu - j);
  }
  return s;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "verify") return Command::verify;
  if (name == "kernel") return Command::kernel;
  if (name == "bernstein") return Command::bernstein;
  if (name == "approximate") return Command::approximate;
  if (name == "rates") return Command::rates;
  if (name == "kfun") return Command::kfun;
  throw std::invalid_argument("unknown command '" + name + "'");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::kernel: return "kernel";
    case Command::bernstein: return "bernstein";
    case Command::approximate: return "approximate";
    case Command::rates: return "rates";
    case Command::kfun: return "kfun";
  }
  return "?";
}

void validate_config(const ExperimentConfig& c) {
  if (c.k_min > c.k_max) throw std::invalid_argument("rho-kmin must not exceed rho-kmax");
  if (c.k_min < 0) throw std::invalid_argument("rho-kmin must be >= 0");
  if (c.k_max > 52) throw std::invalid_argument("rho-kmax must be <= 52");
  if (!(c.p >= 1.0)) throw std::invalid_argument("p must be >= 1 or inf");
  if (c.grid_n && *c.grid_n < 4) throw std::invalid_argument("grid must have at least 4 points per axis");
  switch (c.command) {
    case Command::bernstein:
    case Command::kernel:
      if (c.r < 0 || c.r > kMaxDerivativeOrder) throw std::invalid_argument("r must lie in [0, 6]");
      break;
    case Command::approximate:
    case Command::rates:
      if (c.r < 1) throw std::invalid_argument("r must be >= 1");
      break;
    case Command::kfun:
      if (c.n < 1) throw std::invalid_argument("n must be >= 1");
      if (c.k_min < 1) throw std::invalid_argument("kfun needs delta = 2^-k <= 1/2, so rho-kmin >= 1");
      break;
    case Command::verify: break;
  }
}

std::vector<double> rho_ladder(const ExperimentConfig& config) {
  std::vector<double> out;
  for (int k = config.k_min; k <= config.k_max; ++k) out.push_back(1.0 - std::ldexp(1.0, -k));
  return out;
}

int spectral_grid_size(int degree) noexcept { return 4 * degree + 4; }

SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw std::invalid_argument("fit_slope: need at least three points");
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - intercept - slope * x[i];
    rss += e * e;
  }
  return {slope, intercept, std::sqrt(rss / (m - 2.0) / sxx)};
}

double kfun_apriori_constant(double delta, int n, double p) {
  const double rho = 1.0 - delta;
  const double dn = std::pow(delta, n);
  if (p == 2.0) {
    // nu!/(nu-n)! rho^nu peaks near nu = n / delta.
    const int last = n + static_cast<int>(std::ceil(8.0 * n / delta)) + 16;
    double best = 0.0;
    for (int nu = n; nu <= last; ++nu) best = std::max(best, falling_factorial(nu, n) * std::pow(rho, nu));
    return std::max(1.0, dn * best);
  }
  if (n > kMaxDerivativeOrder) throw std::invalid_argument("kfun: n must be <= 6 for p != 2");
  const auto grid = make_grid(auto_grid_size(rho).n);
  const double integral = bernstein_integral(rho, n, grid).value;
  return std::max(1.0, dn * std::pow(rho, n) * integral);
}

ExperimentResult run_kernel(const ExperimentConfig& config) {
  ExperimentResult res;
  struct Out {
    double mean = 0.0;
    double series_diff = 0.0;
    double tail = 0.0;
    double peak = 0.0;
    int cutoff = 0;
    int grid_n = 0;
    bool capped = false;
  };
  const auto rhos = rho_ladder(config);
  const auto outs = over_ladder<Out>(rhos, [&](double rho) {
    Out o;
    const auto grid = kernel_grid(config, rho, o.capped);
    o.grid_n = grid.n();
    o.mean = grid_average(grid, [rho](const HexPoint& t) { return hex_kernel_closed(rho, t); });
    o.cutoff = 0;
    while (o.cutoff < kMaxSeriesCutoff && series_tail_bound(rho, o.cutoff) > 1e-12) ++o.cutoff;
    o.tail = series_tail_bound(rho, o.cutoff);
    o.peak = hex_kernel_closed(rho, HexPoint{});
    std::mt19937_64 rng(config.seed);
    for (int i = 0; i < kKernelSeriesPoints; ++i) {
      const auto t = random_point(rng);
      const auto s = hex_kernel_series(rho, t, o.cutoff);
      o.series_diff = std::max(o.series_diff, std::abs(s.value - hex_kernel_closed(rho, t)));
    }
    return o;
  });
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    const auto& o = outs[i];
    const double mean_err = std::abs(o.mean - 1.0);
    // Rounding in the series grows with the kernel peak.
    const double series_tol = o.tail + 1e-12 * std::max(1.0, o.peak);
    const bool ok = mean_err <= kKernelMeanTol && o.series_diff <= series_tol;
    if (!ok) res.exit_code = kExitAssertion;
    ReportRow row;
    row.set("experiment", "kernel")
        .set("k", std::int64_t{config.k_min + static_cast<int>(i)})
        .set("rho", rhos[i])
        .set("grid_n", std::int64_t{o.grid_n})
        .set("capped", o.capped)
        .set("mean", o.mean)
        .set("mean_error", mean_err)
        .set("mean_tol", kKernelMeanTol)
        .set("series_cutoff", std::int64_t{o.cutoff})
        .set("series_points", std::int64_t{kKernelSeriesPoints})
        .set("series_max_diff", o.series_diff)
        .set("series_tol", series_tol)
        .set("seed", static_cast<std::int64_t>(config.seed))
        .set("status", status(ok));
    res.report.add(std::move(row));
  }
  return res;
}

ExperimentResult run_bernstein(const ExperimentConfig& config) {
  ExperimentResult res;
  struct Out {
    IntegralResult integral{};
    bool capped = false;
  };
  const auto rhos = rho_ladder(config);
  const auto outs = over_ladder<Out>(rhos, [&](double rho) {
    Out o;
    const auto grid = kernel_grid(config, rho, o.capped);
    o.integral = bernstein_integral(rho, config.r, grid);
    return o;
  });
  double c_emp = 0.0;
  std::vector<double> scaled;
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    const auto& o = outs[i];
    const double s = o.integral.value * std::pow(1.0 - rhos[i], config.r);
    scaled.push_back(s);
    c_emp = std::max(c_emp, s);
    bool ok = std::isfinite(s);
    if (config.r == 0) ok = ok && std::abs(s - 1.0) <= kKernelMeanTol;
    if (!ok) res.exit_code = kExitAssertion;
    ReportRow row;
    row.set("experiment", "bernstein")
        .set("k", std::int64_t{config.k_min + static_cast<int>(i)})
        .set("rho", rhos[i])
        .set("r", std::int64_t{config.r})
        .set("I", o.integral.value)
        .set("scaled", s)
        .set("grid_n", std::int64_t{o.integral.grid_n})
        .set("capped", o.capped)
        .set("underresolved", o.integral.underresolved)
        .set("status", status(ok));
    res.report.add(std::move(row));
  }
  ReportRow summary;
  summary.set("experiment", "bernstein-summary").set("r", std::int64_t{config.r}).set("C_emp", c_emp);
  if (scaled.size() >= 2) {
    const double ratio = scaled.back() / scaled[scaled.size() - 2];
    const bool ok = ratio >= kRatioLow && ratio <= kRatioHigh;
    if (!ok) res.exit_code = kExitAssertion;
    summary.set("last_ratio", ratio).set("ratio_low", kRatioLow).set("ratio_high", kRatioHigh).set("status", status(ok));
  }
  res.report.add(std::move(summary));
  return res;
}

ExperimentResult run_approximate(const ExperimentConfig& config) {
  ExperimentResult res;
  const Input in = load_input(config);
  const auto grid = spectral_grid(config, in.f);
  const double fnorm = lp_norm(synthesize(in.f, grid), config.p);
  struct Out {
    double dev_grid = 0.0, dev_l2 = 0.0, remainder = std::nan(""), mp = 0.0;
  };
  const auto rhos = rho_ladder(config);
  const auto outs = over_ladder<Out>(rhos, [&](double rho) {
    Out o;
    const SummationParams sp(rho, config.r);
    o.dev_grid = deviation_norm(in.f, sp, config.p, grid);
    o.dev_l2 = deviation_norm_l2(in.f, sp);
    if (config.r >= 2) o.remainder = remainder_integral_norm(in.f, sp, config.p, grid);
    o.mp = m_p(in.f, rho, config.r, config.p, grid);
    return o;
  });
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    const auto& o = outs[i];
    const double h = 1.0 - rhos[i];
    bool ok = true;
    if (config.p == 2.0) ok = ok && std::abs(o.dev_grid - o.dev_l2) <= kParsevalTol;
    if (config.r >= 2) ok = ok && std::abs(o.remainder - o.dev_grid) <= kRemainderTol;
    if (!ok) res.exit_code = kExitAssertion;
    ReportRow row;
    row.set("experiment", "approximate")
        .set("function", in.name)
        .set("k", std::int64_t{config.k_min + static_cast<int>(i)})
        .set("rho", rhos[i])
        .set("r", std::int64_t{config.r})
        .set("p", p_label(config.p))
        .set("deviation", o.dev_grid)
        .set("deviation_l2_spectral", o.dev_l2)
        .set("remainder_integral", config.r >= 2 ? ReportValue{o.remainder} : ReportValue{})
        .set("scaled", o.dev_grid / std::pow(h, config.r))
        .set("m_p", o.mp)
        .set("m_p_scaled", fnorm > 0.0 ? o.mp / std::pow(rhos[i], config.r) * std::pow(h, config.r) / fnorm : 0.0)
        .set("grid_n", std::int64_t{grid.n()})
        .set("tolerance", config.r >= 2 ? kRemainderTol : kParsevalTol)
        .set("status", status(ok));
    res.report.add(std::move(row));
  }
  return res;
}

ExperimentResult run_rates(const ExperimentConfig& config) {
  ExperimentResult res;
  const auto rhos = rho_ladder(config);
  if (static_cast<int>(rhos.size()) < kMinRatePoints) {
    throw std::invalid_argument("rates needs at least " + std::to_string(kMinRatePoints) + " ladder points, got " +
                                std::to_string(rhos.size()));
  }
  const Input in = load_input(config);
  const bool spectral = config.p == 2.0;
  const auto grid = spectral_grid(config, in.f);

  // Shell energies for the brute-force oracle.
  std::vector<double> energy(static_cast<std::size_t>(std::max(in.f.max_degree(), 0)) + 1, 0.0);
  for (const auto& [k, c] : in.f.entries()) energy[static_cast<std::size_t>(k.degree())] += std::norm(c);

  struct Out {
    double deviation = 0.0, oracle = 0.0;
  };
  const auto outs = over_ladder<Out>(rhos, [&](double rho) {
    Out o;
    const SummationParams sp(rho, config.r);
    o.deviation = spectral ? deviation_norm_l2(in.f, sp) : deviation_norm(in.f, sp, config.p, grid);
    double s = 0.0;
    for (std::size_t nu = 0; nu < energy.size(); ++nu) {
      const double c = naive_complement(static_cast<int>(nu), config.r, rho);
      s += c * c * energy[nu];
    }
    o.oracle = std::sqrt(s);
    return o;
  });

  std::vector<double> xs, ys;
  bool all_zero = true;
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    const auto& o = outs[i];
    bool ok = true;
    if (spectral) ok = std::abs(o.deviation - o.oracle) <= kOracleRelTol * std::max(o.oracle, 1e-300);
    if (!ok) res.exit_code = kExitAssertion;
    if (o.deviation > 0.0) {
      all_zero = false;
      xs.push_back(std::log2(1.0 - rhos[i]));
      ys.push_back(std::log2(o.deviation));
    }
    ReportRow row;
    row.set("experiment", "rates")
        .set("family", in.name)
        .set("k", std::int64_t{config.k_min + static_cast<int>(i)})
        .set("rho", rhos[i])
        .set("r", std::int64_t{config.r})
        .set("p", p_label(config.p))
        .set("norm", spectral ? "spectral" : "grid")
        .set("grid_n", std::int64_t{spectral ? 0 : grid.n()})
        .set("deviation", o.deviation)
        .set("oracle", o.oracle)
        .set("tolerance", kOracleRelTol)
        .set("l2_tail", in.l2_tail)
        .set("status", status(ok));
    res.report.add(std::move(row));
  }

  ReportRow summary;
  summary.set("experiment", "rates-summary").set("family", in.name).set("r", std::int64_t{config.r});
  if (all_zero) {
    summary.set("slope", "exact-zero").set("stderr", 0.0).set("status", "pass");
  } else if (xs.size() < 3) {
    summary.set("slope", "insufficient-nonzero-points").set("status", "pass");
  } else {
    const auto fit = fit_slope(xs, ys);
    summary.set("slope", fit.slope).set("stderr", fit.stderr_slope);
    // The saturation rate applies to the analytic family.
    if (in.name == "analytic") {
      const bool ok = std::abs(fit.slope - config.r) <= kSlopeTol;
      if (!ok) res.exit_code = kExitAssertion;
      summary.set("expected", static_cast<double>(config.r)).set("slope_tol", kSlopeTol).set("status", status(ok));
    } else {
      summary.set("status", "recorded");
    }
  }
  res.report.add(std::move(summary));
  return res;
}

ExperimentResult run_kfun(const ExperimentConfig& config) {
  ExperimentResult res;
  const Input in = load_input(config);
  const auto grid = spectral_grid(config, in.f);
  std::vector<double> deltas;
  for (int k = config.k_min; k <= config.k_max; ++k) deltas.push_back(std::ldexp(1.0, -k));
  struct Out {
    KfunEstimate est{};
    double apriori = 0.0;
  };
  const auto outs = over_ladder<Out>(deltas, [&](double delta) {
    return Out{kfun_estimate(in.f, delta, config.n, config.p, grid), kfun_apriori_constant(delta, config.n, config.p)};
  });
  double c_emp = 0.0;
  double c_apriori = 0.0;
  for (const auto& o : outs) c_apriori = std::max(c_apriori, o.apriori);
  bool all_ok = true;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const auto& e = outs[i].est;
    double ratio = 0.0;
    if (e.upper > 0.0) ratio = e.lower_proxy / e.upper;
    else if (e.lower_proxy > 0.0) ratio = kInfinity;
    c_emp = std::max(c_emp, ratio);
    const bool ok = e.lower_proxy <= c_apriori * e.upper * (1.0 + 1e-12);
    all_ok = all_ok && ok;
    ReportRow row;
    row.set("experiment", "kfun")
        .set("function", in.name)
        .set("k", std::int64_t{config.k_min + static_cast<int>(i)})
        .set("delta", e.delta)
        .set("n", std::int64_t{config.n})
        .set("p", p_label(config.p))
        .set("lower_proxy", e.lower_proxy)
        .set("upper", e.upper)
        .set("argmin", e.argmin_candidate)
        .set("ratio", ratio)
        .set("grid_n", std::int64_t{config.p == 2.0 ? 0 : grid.n()})
        .set("status", status(ok));
    res.report.add(std::move(row));
  }
  if (!all_ok) res.exit_code = kExitAssertion;
  ReportRow summary;
  summary.set("experiment", "kfun-summary")
      .set("function", in.name)
      .set("n", std::int64_t{config.n})
      .set("C_emp", c_emp)
      .set("C_apriori", c_apriori)
      .set("status", status(all_ok));
  res.report.add(std::move(summary));
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  try {
    validate_config(config);
    switch (config.command) {
      case Command::verify: return run_verify(config);
      case Command::kernel: return run_kernel(config);
      case Command::bernstein: return run_bernstein(config);
      case Command::approximate: return run_approximate(config);
      case Command::rates: return run_rates(config);
      case Command::kfun: return run_kfun(config);
    }
  } catch (const std::exception& e) {
    ExperimentResult res;
    res.exit_code = kExitConfig;
    res.messages.push_back(std::string("error: ") + e.what());
    return res;
  }
  return {};
}

}  // namespace hexsum
