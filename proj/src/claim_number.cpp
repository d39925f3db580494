#include "borel_claims/claim_number.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace borel_claims {

void validate(const BartlettParams& p) {
  if (!(p.theta >= 0.0)) throw std::domain_error("Bartlett: theta must be >= 0");
  if (!(p.lambda > 0.0) || !(p.lambda < 1.0)) {
    throw std::domain_error("Bartlett: lambda must lie in (0,1)");
  }
}

void validate(const DelaporteParams& p) {
  if (!(p.theta >= 0.0)) throw std::domain_error("Delaporte: theta must be >= 0");
  if (!(p.lambda > 0.0) || !(p.lambda < 1.0)) {
    throw std::domain_error("Delaporte: lambda must lie in (0,1)");
  }
  if (p.m < 1) throw std::domain_error("Delaporte: m must be >= 1");
}

LogWeight bartlett_pmf(const BartlettParams& p, long n) {
  validate(p);
  if (n < 0) return LogWeight::zero();
  const double log_ratio = p.theta > 0.0 ? std::log(p.theta / p.lambda) : 0.0;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    if (k > 0 && p.theta == 0.0) break;
    terms.push_back(static_cast<double>(k) * log_ratio - log_factorial(k));
  }
  const double base = std::log1p(-p.lambda) + static_cast<double>(n) * std::log(p.lambda) - p.theta;
  return LogWeight::from_log(base + log_sum_exp(std::span<const double>(terms)));
}

LogWeight delaporte_pmf(const DelaporteParams& p, long n) {
  validate(p);
  if (n < 0) return LogWeight::zero();
  const double log_lambda = std::log(p.lambda);
  const double log_theta = p.theta > 0.0 ? std::log(p.theta) : 0.0;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    if (k < n && p.theta == 0.0) continue;  // Poisson part vanishes
    double t = log_binomial(k + p.m - 1, k).log_value() + static_cast<double>(k) * log_lambda -
               log_factorial(n - k);
    if (k < n) t += static_cast<double>(n - k) * log_theta;
    terms.push_back(t);
  }
  const double base = p.m * std::log1p(-p.lambda) - p.theta;
  return LogWeight::from_log(base + log_sum_exp(std::span<const double>(terms)));
}

std::pair<double, double> bartlett_mean_var(const BartlettParams& p) {
  validate(p);
  const double q = 1.0 - p.lambda;
  return {p.theta + p.lambda / q, p.theta + p.lambda / (q * q)};
}

std::pair<double, double> delaporte_mean_var(const DelaporteParams& p) {
  validate(p);
  const double q = 1.0 - p.lambda;
  return {p.theta + p.m * p.lambda / q, p.theta + p.m * p.lambda / (q * q)};
}

}  // namespace borel_claims
