#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "borel_claims/numerics.hpp"

using namespace borel_claims;

namespace {

// Pascal-triangle oracle, exact integer arithmetic.
std::vector<std::vector<unsigned long long>> pascal(int n_max) {
  std::vector<std::vector<unsigned long long>> c(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    c[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
  }
  return c;
}

// Exact alpha symbols in 128-bit arithmetic: alpha^ell(m-1) = (m-1)m...(m+ell-2).
unsigned __int128 alpha_exact(int m, int ell) {
  unsigned __int128 v = 1;
  for (int i = 0; i < ell; ++i) v *= static_cast<unsigned>(m - 1 + i);
  return v;
}

double rel_err(double got, double want) {
  return want == 0.0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want);
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("LogWeight construction guards") {
  CHECK_THROWS_AS(LogWeight::from_log(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(LogWeight::from_log(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(LogWeight::from_linear(-0.5), std::domain_error);
  CHECK(LogWeight::zero().is_zero());
  CHECK(LogWeight::one().log_value() == 0.0);
  CHECK(LogWeight::from_linear(0.0).is_zero());
  const LogWeight half = LogWeight::from_linear(0.5);
  CHECK((half * half).linear() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK((half * LogWeight::zero()).is_zero());
}

TEST_CASE("log_sum_exp basics") {
  const double log_half = std::log(0.5);
  const std::vector<double> halves{log_half, log_half};
  CHECK(std::fabs(log_sum_exp(std::span<const double>(halves))) < 1e-15);
  const std::vector<double> empty;
  CHECK(log_sum_exp(std::span<const double>(empty)) ==
        -std::numeric_limits<double>::infinity());
  const std::vector<double> mix{std::log(0.25), std::log(0.25), std::log(0.5)};
  CHECK(std::fabs(log_sum_exp(std::span<const double>(mix))) < 1e-15);
  // Single element passes through unchanged.
  const std::vector<double> one{-123.456};
  CHECK(log_sum_exp(std::span<const double>(one)) == -123.456);
  const std::vector<double> zeros{-std::numeric_limits<double>::infinity(),
                                  -std::numeric_limits<double>::infinity()};
  CHECK(log_sum_exp(std::span<const double>(zeros)) ==
        -std::numeric_limits<double>::infinity());
  const std::vector<LogWeight> weights{LogWeight::from_linear(0.25), LogWeight::from_linear(0.25),
                                       LogWeight::from_linear(0.5)};
  CHECK(std::fabs(log_sum_exp(std::span<const LogWeight>(weights)).log_value()) < 1e-15);
}

TEST_CASE("log_binomial against the Pascal oracle") {
  CHECK(log_binomial(3, 1).linear() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(log_binomial(10, 5).linear() == doctest::Approx(252.0).epsilon(1e-13));
  for (long n = 0; n <= 40; ++n) CHECK(log_binomial(n, 0).log_value() == 0.0);
  CHECK(log_binomial(5, -1).is_zero());
  CHECK(log_binomial(5, 6).is_zero());
  const auto c = pascal(30);
  for (int n = 0; n <= 30; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(rel_err(log_binomial(n, k).linear(), static_cast<double>(c[n][k])) < 1e-12);
    }
  }
  // Beyond the exact-integer window the lgamma path takes over.
  CHECK(rel_err(log_binomial(200, 100).log_value(),
                std::lgamma(201.0) - 2.0 * std::lgamma(101.0)) < 1e-12);
}

TEST_CASE("alpha symbols") {
  CHECK(alpha_symbol(2, 0).value_log.log_value() == 0.0);
  CHECK(alpha_symbol(2, 2).value_log.linear() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(alpha_symbol(3, 2).value_log.linear() == doctest::Approx(6.0).epsilon(1e-14));
  CHECK_THROWS_AS(alpha_symbol(1, 2), std::domain_error);
  CHECK_THROWS_AS(alpha_symbol(2, -1), std::domain_error);
  // log alpha^ell(m-1) = lgamma(m+ell-1) - lgamma(m-1).
  for (int m = 2; m <= 6; ++m) {
    for (int ell = 0; ell <= 12; ++ell) {
      CHECK(std::fabs(log_alpha_symbol(m, ell) -
                      (std::lgamma(m + ell - 1.0) - std::lgamma(m - 1.0))) < 1e-10);
    }
  }
}

TEST_CASE("alpha recursion holds exactly in integer arithmetic") {
  // alpha^{ell+1}(m-1) = (m-1) * alpha^ell(m)
  for (int m = 2; m <= 8; ++m) {
    for (int ell = 0; ell <= 20; ++ell) {
      const unsigned __int128 lhs = alpha_exact(m, ell + 1);
      const unsigned __int128 rhs = static_cast<unsigned>(m - 1) * alpha_exact(m + 1, ell);
      CHECK(lhs == rhs);
      CHECK(rel_err(log_alpha_symbol(m, ell + 1), std::log(static_cast<double>(lhs))) < 1e-12);
    }
  }
}

TEST_CASE("alpha_binomial_expand") {
  CHECK(alpha_binomial_expand(LogWeight::from_linear(3.0), 0.5, 2, 0).log_value() == 0.0);
  // (2 + 0.5*alpha(1))^1 = 2 + 0.5*1 = 2.5
  CHECK(alpha_binomial_expand(LogWeight::from_linear(2.0), 0.5, 2, 1).linear() ==
        doctest::Approx(2.5).epsilon(1e-14));
  // (1.5 + 0.5*alpha(2))^2 = 2.25 + 2*1.5*0.5*alpha^1(2) + 0.25*alpha^2(2)
  //                        = 2.25 + 1.5*2 + 0.25*6 = 6.75
  {
    double want = 0.0;
    for (int ell = 0; ell <= 2; ++ell) {
      want += std::exp(log_binomial(2, ell).log_value()) * std::pow(1.5, 2 - ell) *
              std::pow(0.5, ell) * static_cast<double>(alpha_exact(3, ell));
    }
    CHECK(want == doctest::Approx(6.75).epsilon(1e-14));
    CHECK(alpha_binomial_expand(LogWeight::from_linear(1.5), 0.5, 3, 2).linear() ==
          doctest::Approx(6.75).epsilon(1e-13));
  }
  // lambda = 0 collapses to the pure power n*log(x).
  for (long n : {1L, 3L, 7L}) {
    const double x = 1.7;
    CHECK(rel_err(alpha_binomial_expand(LogWeight::from_linear(x), 0.0, 4, n).log_value(),
                  n * std::log(x)) < 1e-14);
  }
  CHECK_THROWS_AS(alpha_binomial_expand(LogWeight::from_linear(1.0), 0.5, 1, 2),
                  std::domain_error);
}

TEST_CASE("regularized incomplete gamma") {
  // Q(1/2, x) = erfc(sqrt(x)); Q(1, x) = e^{-x}.
  for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    CHECK(rel_err(gamma_q(0.5, x), std::erfc(std::sqrt(x))) < 1e-12);
    CHECK(rel_err(gamma_q(1.0, x), std::exp(-x)) < 1e-12);
    CHECK(std::fabs(gamma_p(2.5, x) + gamma_q(2.5, x) - 1.0) < 1e-13);
  }
  CHECK(gamma_q(2.0, 0.0) == 1.0);
  CHECK_THROWS_AS(gamma_q(-1.0, 1.0), std::domain_error);
}

TEST_CASE("power-series ratio bound dominates measured ratios") {
  // Terms (theta + lambda n)^{n+d} e^{-lambda n} / n!: the certificate must
  // dominate every later measured ratio and stay nonincreasing.
  for (double theta : {0.0, 0.5, 2.0}) {
    for (double lambda : {0.3, 0.9}) {
      for (double d : {-1.0, 0.0, 5.0}) {
        const auto log_term = [&](long n) {
          const double a = theta + lambda * static_cast<double>(n);
          double t = -lambda * n - log_factorial(n);
          const double e = static_cast<double>(n) + d;
          if (e != 0.0 && a > 0.0) t += e * std::log(a);
          return t;
        };
        for (long n = 5; n <= 400; n += 13) {
          const double bound = detail::power_series_ratio_bound(theta, lambda, d, n);
          for (long j = n; j < n + 50; ++j) {
            const double measured = std::exp(log_term(j + 1) - log_term(j));
            CHECK(measured <= bound * (1.0 + 1e-12));
          }
          CHECK(detail::power_series_ratio_bound(theta, lambda, d, n + 1) <=
                bound * (1.0 + 1e-12));
        }
      }
    }
  }
}

}  // TEST_SUITE
