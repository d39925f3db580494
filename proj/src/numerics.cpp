#include "borel_claims/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace borel_claims {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LogWeight LogWeight::from_log(double log_value) {
  if (std::isnan(log_value)) {
    throw std::domain_error("LogWeight: log value must not be NaN");
  }
  if (log_value == std::numeric_limits<double>::infinity()) {
    throw std::domain_error("LogWeight: +infinity is not a probability magnitude");
  }
  LogWeight w;
  w.log_ = log_value;
  return w;
}

LogWeight LogWeight::from_linear(double value) {
  if (std::isnan(value) || value < 0.0) {
    throw std::domain_error("LogWeight: linear value must be nonnegative");
  }
  return from_log(std::log(value));
}

double LogWeight::linear() const { return std::exp(log_); }

LogWeight& LogWeight::operator*=(const LogWeight& other) {
  if (is_zero() || other.is_zero()) {
    log_ = kNegInf;
  } else {
    log_ += other.log_;
  }
  return *this;
}

double log_sum_exp(std::span<const double> log_terms) {
  if (log_terms.empty()) return kNegInf;
  if (log_terms.size() == 1) return log_terms[0];
  double m = kNegInf;
  for (double t : log_terms) m = std::max(m, t);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double t : log_terms) s += std::exp(t - m);
  return m + std::log(s);
}

double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

LogWeight log_sum_exp(std::span<const LogWeight> terms) {
  std::vector<double> logs;
  logs.reserve(terms.size());
  for (const auto& t : terms) logs.push_back(t.log_value());
  return LogWeight::from_log(log_sum_exp(std::span<const double>(logs)));
}

namespace {

// Cumulative table of log k. Sharing prefixes keeps the rounding error of
// log(n!) and log((n-1)!) correlated, which the recursion residual checks
// rely on.
constexpr long kLogFactorialTableSize = 1 << 15;

const std::vector<double>& log_factorial_table() {
  static std::vector<double> table = [] {
    std::vector<double> t(kLogFactorialTableSize);
    t[0] = 0.0;
    for (long n = 1; n < kLogFactorialTableSize; ++n) {
      t[n] = t[n - 1] + std::log(static_cast<double>(n));
    }
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(long n) {
  if (n < 0) throw std::domain_error("log_factorial: n must be >= 0");
  const auto& table = log_factorial_table();
  if (n < kLogFactorialTableSize) return table[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

LogWeight log_binomial(long n, long k) {
  if (n < 0) throw std::domain_error("log_binomial: n must be >= 0");
  if (k < 0 || k > n) return LogWeight::zero();
  k = std::min(k, n - k);
  // Exact multiplicative path while the value stays below 2^62.
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t c = 1;
  bool exact = true;
  for (long i = 1; i <= k; ++i) {
    std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (c > kLimit / num) {
      exact = false;
      break;
    }
    c = c * num / static_cast<std::uint64_t>(i);
  }
  if (exact) return LogWeight::from_log(std::log(static_cast<double>(c)));
  return LogWeight::from_log(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

double log_alpha_symbol(int m, long ell) {
  if (m < 2) throw std::domain_error("alpha symbol: shape m must be >= 2");
  if (ell < 0) throw std::domain_error("alpha symbol: order must be >= 0");
  if (ell == 0) return 0.0;
  // alpha^ell(m-1) = (m-1) m (m+1) ... (m+ell-2) = Gamma(m+ell-1)/Gamma(m-1).
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t v = 1;
  bool exact = true;
  for (long i = 0; i < ell; ++i) {
    std::uint64_t f = static_cast<std::uint64_t>(m - 1 + i);
    if (v > kLimit / f) {
      exact = false;
      break;
    }
    v *= f;
  }
  if (exact) return std::log(static_cast<double>(v));
  return log_factorial(m + ell - 2) - log_factorial(m - 2);
}

AlphaSymbol alpha_symbol(int m, long ell) {
  return AlphaSymbol{m, ell, LogWeight::from_log(log_alpha_symbol(m, ell))};
}

LogWeight alpha_binomial_expand(LogWeight x, double lambda, int m, long n) {
  if (m < 2) throw std::domain_error("alpha_binomial_expand: shape m must be >= 2");
  if (lambda < 0.0 || lambda >= 1.0) {
    throw std::domain_error("alpha_binomial_expand: lambda must lie in [0,1)");
  }
  if (n < 0) throw std::domain_error("alpha_binomial_expand: n must be >= 0");
  if (n == 0) return LogWeight::one();
  const double log_x = x.log_value();
  const double log_lambda = std::log(lambda);
  std::vector<double> terms(static_cast<std::size_t>(n) + 1, kNegInf);
  for (long ell = 0; ell <= n; ++ell) {
    double t = log_binomial(n, ell).log_value();
    if (ell < n) {
      if (log_x == kNegInf) continue;
      t += static_cast<double>(n - ell) * log_x;
    }
    if (ell > 0) {
      if (lambda == 0.0) continue;
      t += static_cast<double>(ell) * log_lambda + log_alpha_symbol(m, ell);
    }
    terms[static_cast<std::size_t>(ell)] = t;
  }
  return LogWeight::from_log(log_sum_exp(std::span<const double>(terms)));
}

namespace {

// Incomplete gamma by series (x < a+1) and continued fraction (otherwise).
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_p: requires a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_q: requires a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

namespace detail {

double power_series_ratio_bound(double theta, double lambda, double d, long n) {
  // t_{j+1}/t_j = lambda * (j+beta)/(j+1) * e^{-lambda} * (1+1/(j+beta))^{j+1+d}
  // with beta = theta/lambda. The power factor is monotone in j toward e, so
  // its supremum over j >= n is max of the value at n and the limit e.
  if (lambda == 0.0) return poisson_ratio_bound(theta, n);
  const double beta = theta / lambda;
  const double x = static_cast<double>(n) + beta;
  if (x <= 0.0) return std::numeric_limits<double>::infinity();
  const double c = 1.0 + d - beta;
  const double pow_log = (x + c) * std::log1p(1.0 / x);
  const double sup_log = std::max(pow_log, 1.0);
  const double rho = std::max(1.0, x / (static_cast<double>(n) + 1.0));
  return lambda * rho * std::exp(sup_log - lambda);
}

double poisson_ratio_bound(double theta, long n) {
  return theta / (static_cast<double>(n) + 1.0);
}

double negbin_ratio_bound(double lambda, int m, long n) {
  return lambda * (static_cast<double>(n) + m) / (static_cast<double>(n) + 1.0);
}

double borel_tanner_ratio_bound(double lambda, int m, long n) {
  // ratio over support points: lambda*e^{1-lambda} * f(m,n) with
  // f = e^{-m/n} * n/(n-m+1); sup over later points is max(f, 1).
  if (n < m) return 1.0;
  const double nd = static_cast<double>(n);
  const double f = std::exp(-static_cast<double>(m) / nd) * nd / (nd - m + 1.0);
  return lambda * std::exp(1.0 - lambda) * std::max(1.0, f);
}

double geometric_tail_mass(double term, double ratio) {
  if (!(ratio < 1.0) || ratio < 0.0) return std::numeric_limits<double>::infinity();
  return term * ratio / (1.0 - ratio);
}

double geometric_tail_first_moment(long n, double term, double ratio) {
  if (!(ratio < 1.0) || ratio < 0.0) return std::numeric_limits<double>::infinity();
  const double g = ratio / (1.0 - ratio);
  return term * (static_cast<double>(n) * g + g / (1.0 - ratio));
}

}  // namespace detail

}  // namespace borel_claims
