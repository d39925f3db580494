#include "borel_claims/borel.hpp"

#include <cmath>
#include <stdexcept>

namespace borel_claims {

void validate(const BorelParams& p) {
  if (!(p.lambda > 0.0) || !(p.lambda <= 1.0)) {
    throw std::domain_error("Borel: lambda must lie in (0,1]");
  }
}

void validate(const BorelTannerParams& p) {
  if (!(p.lambda > 0.0) || !(p.lambda <= 1.0)) {
    throw std::domain_error("Borel-Tanner: lambda must lie in (0,1]");
  }
  if (p.m < 1) throw std::domain_error("Borel-Tanner: m must be >= 1");
}

LogWeight borel_pmf(const BorelParams& p, long n) {
  validate(p);
  if (n < 1) return LogWeight::zero();
  const double ln = static_cast<double>(n);
  const double log_p = (ln - 1.0) * std::log(p.lambda * ln) - p.lambda * ln - log_factorial(n);
  return LogWeight::from_log(log_p);
}

LogWeight borel_tanner_pmf(const BorelTannerParams& p, long n) {
  validate(p);
  if (n < p.m) return LogWeight::zero();
  const double ln = static_cast<double>(n);
  double log_p = std::log(static_cast<double>(p.m)) - std::log(ln) - p.lambda * ln -
                 log_factorial(n - p.m);
  if (n > p.m) log_p += static_cast<double>(n - p.m) * std::log(p.lambda * ln);
  return LogWeight::from_log(log_p);
}

std::pair<double, double> borel_mean_var(const BorelParams& p) {
  validate(p);
  if (p.lambda == 1.0) {
    throw std::domain_error("Borel: the expectation does not exist at lambda = 1");
  }
  const double q = 1.0 - p.lambda;
  return {1.0 / q, p.lambda / (q * q * q)};
}

std::pair<double, double> borel_tanner_mean_var(const BorelTannerParams& p) {
  validate(p);
  if (p.lambda == 1.0) {
    throw std::domain_error("Borel-Tanner: the expectation does not exist at lambda = 1");
  }
  const double q = 1.0 - p.lambda;
  return {p.m / q, p.m * p.lambda / (q * q * q)};
}

double borel_pgf(const BorelParams& p, double z) {
  validate(p);
  if (z < 0.0 || z > 1.0) throw std::domain_error("borel_pgf: z must lie in [0,1]");
  double g = z;
  for (int it = 0; it < 10000; ++it) {
    const double next = z * std::exp(p.lambda * (g - 1.0));
    if (std::fabs(next - g) < 1e-14) return next;
    g = next;
  }
  throw std::runtime_error("borel_pgf: fixed-point iteration did not converge");
}

}  // namespace borel_claims
