#ifndef BOREL_CLAIMS_NUMERICS_HPP
#define BOREL_CLAIMS_NUMERICS_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace borel_claims {

// A probability magnitude carried in natural-log scale. -infinity encodes an
// exact zero; +infinity and NaN are rejected at construction.
class LogWeight {
 public:
  LogWeight() : log_(-std::numeric_limits<double>::infinity()) {}

  static LogWeight from_log(double log_value);
  static LogWeight from_linear(double value);
  static LogWeight zero() { return LogWeight(); }
  static LogWeight one() { return from_log(0.0); }

  double log_value() const { return log_; }
  double linear() const;
  bool is_zero() const { return log_ == -std::numeric_limits<double>::infinity(); }

  // Multiplication of the underlying magnitudes.
  LogWeight& operator*=(const LogWeight& other);
  friend LogWeight operator*(LogWeight a, const LogWeight& b) { return a *= b; }

  friend bool operator==(const LogWeight& a, const LogWeight& b) { return a.log_ == b.log_; }
  friend auto operator<=>(const LogWeight& a, const LogWeight& b) { return a.log_ <=> b.log_; }

 private:
  double log_;
};

// log(sum exp(x_i)) over raw log values; empty input gives -infinity and a
// single element is returned unchanged.
double log_sum_exp(std::span<const double> log_terms);
double log_sum_exp(double a, double b);
LogWeight log_sum_exp(std::span<const LogWeight> terms);

// log(n!) backed by a cumulative table of log k so that neighbouring values
// share their rounding errors; falls back to lgamma far beyond desk scale.
double log_factorial(long n);

// log C(n, k); zero-probability element outside 0 <= k <= n. Exact integer
// arithmetic is used while C(n,k) stays below 2^62.
LogWeight log_binomial(long n, long k);

// Riordan alpha symbol: alpha^ell(m-1) = C(m+ell-2, ell) * ell!, the symbolic
// power substituted after binomial expansion of (x + lambda*alpha(m-1))^n.
struct AlphaSymbol {
  int m = 2;
  long ell = 0;
  LogWeight value_log;
};

AlphaSymbol alpha_symbol(int m, long ell);
double log_alpha_symbol(int m, long ell);

// log (x + lambda*alpha(m-1))^n = log sum_{ell<=n} C(n,ell) x^{n-ell}
// lambda^ell alpha^ell(m-1), with x given in log scale.
LogWeight alpha_binomial_expand(LogWeight x, double lambda, int m, long n);

// Regularized incomplete gamma functions; gamma_q(a, x) = Q(a, x) is the
// upper tail, used for chi-square survival probabilities.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

namespace detail {

// Nonincreasing upper bound on the ratio t_{j+1}/t_j, valid for all j >= n,
// of terms t_j = (theta + lambda j)^{j+d} e^{-lambda j} / j! with lambda in
// (0,1). The bound tends to lambda*e^{1-lambda} from above.
double power_series_ratio_bound(double theta, double lambda, double d, long n);

// Same for Poisson terms theta^j e^{-theta} / j!.
double poisson_ratio_bound(double theta, long n);

// Negative binomial C(j+m-1,j) lambda^j (1-lambda)^m term-ratio bound.
double negbin_ratio_bound(double lambda, int m, long n);

// Borel-Tanner with m initial individuals, bound valid for support points
// >= n (n >= m). Returns >= 1 when no useful certificate exists.
double borel_tanner_ratio_bound(double lambda, int m, long n);

// Geometric tail sums: term * r/(1-r), and the first-moment variant
// sum_{i>=1} (n+i) r^i * term = term * (n*r/(1-r) + r/(1-r)^2).
double geometric_tail_mass(double term, double ratio);
double geometric_tail_first_moment(long n, double term, double ratio);

}  // namespace detail

}  // namespace borel_claims

#endif
