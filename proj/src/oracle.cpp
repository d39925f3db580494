#include "borel_claims/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace borel_claims::oracle {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Compositions of n into k nonnegative parts, visited iteratively
// (Nijenhuis-Wilf NEXCOM). Count is checked against the budget before any
// work happens.
template <typename Visit>
void for_each_composition(int n, int k, long budget, Visit visit) {
  double count = binomial(n + k - 1, k - 1);
  if (count > static_cast<double>(budget)) {
    throw std::domain_error("composition enumeration budget exceeded");
  }
  std::vector<int> r(static_cast<std::size_t>(k), 0);
  r[0] = n;
  while (true) {
    visit(r);
    if (r[static_cast<std::size_t>(k - 1)] == n) break;
    std::size_t h = 0;
    while (r[h] == 0) ++h;
    int t = r[h];
    r[h] = 0;
    r[0] = t - 1;
    r[h + 1] += 1;
  }
}

}  // namespace

DensePmf DensePmf::point_mass(long n, long n_max) {
  DensePmf d;
  d.p.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (n >= 0 && n <= n_max) d.p[static_cast<std::size_t>(n)] = 1.0;
  return d;
}

DensePmf convolve(const DensePmf& a, const DensePmf& b, long n_max) {
  DensePmf c;
  c.p.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (long n = 0; n <= n_max; ++n) {
    double s = 0.0;
    for (long k = 0; k <= n; ++k) s += a.at(k) * b.at(n - k);
    c.p[static_cast<std::size_t>(n)] = s;
  }
  return c;
}

DensePmf convolve_power(const DensePmf& a, int m, long n_max) {
  DensePmf acc = DensePmf::point_mass(0, n_max);
  for (int i = 0; i < m; ++i) acc = convolve(acc, a, n_max);
  return acc;
}

DensePmf compound_by_mixing(const DensePmf& count, const DensePmf& summand, long n_max) {
  if (summand.at(0) != 0.0) {
    throw std::domain_error("compound_by_mixing: summand must live on the positive integers");
  }
  DensePmf out;
  out.p.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  DensePmf power = DensePmf::point_mass(0, n_max);  // summand^{*0}
  const long m_top = std::min(count.max_n(), n_max);
  for (long m = 0; m <= m_top; ++m) {
    const double w = count.at(m);
    if (w != 0.0) {
      for (long n = 0; n <= n_max; ++n) out.p[static_cast<std::size_t>(n)] += w * power.at(n);
    }
    if (m < m_top) power = convolve(power, summand, n_max);
  }
  return out;
}

std::vector<double> borel_deconvolve(const DensePmf& target, double lambda, long m_max) {
  if (lambda <= 0.0 || lambda >= 1.0) {
    throw std::domain_error("borel_deconvolve: lambda must lie in (0,1)");
  }
  const DensePmf borel = borel_dense(lambda, m_max);
  // Convolution powers Borel^{*m}, m = 0..m_max; power m is supported on
  // {m,...} with diagonal e^{-lambda m}, so the system is triangular.
  std::vector<DensePmf> powers;
  powers.reserve(static_cast<std::size_t>(m_max) + 1);
  powers.push_back(DensePmf::point_mass(0, m_max));
  for (long m = 1; m <= m_max; ++m) powers.push_back(convolve(powers.back(), borel, m_max));
  std::vector<double> c(static_cast<std::size_t>(m_max) + 1, 0.0);
  for (long n = 0; n <= m_max; ++n) {
    double rhs = target.at(n);
    for (long m = 0; m < n; ++m) rhs -= c[static_cast<std::size_t>(m)] * powers[static_cast<std::size_t>(m)].at(n);
    const double diag = powers[static_cast<std::size_t>(n)].at(n);
    if (diag < 1e-300) throw std::runtime_error("borel_deconvolve: singular diagonal");
    c[static_cast<std::size_t>(n)] = rhs / diag;
  }
  return c;
}

DensePmf poisson_dense(double theta, long n_max) {
  DensePmf d;
  d.p.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  double t = std::exp(-theta);
  for (long n = 0; n <= n_max; ++n) {
    d.p[static_cast<std::size_t>(n)] = t;
    t *= theta / static_cast<double>(n + 1);
  }
  return d;
}

DensePmf geometric_dense(double lambda, long n_max) {
  DensePmf d;
  d.p.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  double t = 1.0 - lambda;
  for (long n = 0; n <= n_max; ++n) {
    d.p[static_cast<std::size_t>(n)] = t;
    t *= lambda;
  }
  return d;
}

DensePmf negbin_dense(double lambda, int m, long n_max) {
  DensePmf d;
  d.p.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  double t = std::pow(1.0 - lambda, m);
  for (long n = 0; n <= n_max; ++n) {
    d.p[static_cast<std::size_t>(n)] = t;
    t *= lambda * static_cast<double>(n + m) / static_cast<double>(n + 1);
  }
  return d;
}

DensePmf bartlett_dense(double theta, double lambda, long n_max) {
  return convolve(geometric_dense(lambda, n_max), poisson_dense(theta, n_max), n_max);
}

DensePmf delaporte_dense(double theta, double lambda, int m, long n_max) {
  return convolve(negbin_dense(lambda, m, n_max), poisson_dense(theta, n_max), n_max);
}

DensePmf borel_dense(double lambda, long n_max) {
  DensePmf d;
  d.p.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (n_max < 1) return d;
  // p(1) = e^{-lambda}; p(n+1)/p(n) = lambda e^{-lambda} (1+1/n)^{n-1}.
  double t = std::exp(-lambda);
  for (long n = 1; n <= n_max; ++n) {
    d.p[static_cast<std::size_t>(n)] = t;
    t *= lambda * std::exp(-lambda) * std::pow(1.0 + 1.0 / static_cast<double>(n), static_cast<double>(n - 1));
  }
  return d;
}

DensePmf borel_tanner_dense(double lambda, int m, long n_max) {
  return convolve_power(borel_dense(lambda, n_max), m, n_max);
}

std::pair<double, double> multinomial_identity_check(int n, int k) {
  if (n < 1 || k < 1 || k > n) {
    throw std::domain_error("multinomial_identity_check: requires 1 <= k <= n");
  }
  if (n > 14) throw std::domain_error("multinomial_identity_check: enumeration budget is n <= 14");
  const double n_fact = factorial(n);
  double lhs = 0.0;
  // Positive parts: compositions of n-k into k nonnegative parts, plus one.
  for_each_composition(n - k, k, 20'000'000, [&](const std::vector<int>& r) {
    double term = n_fact / factorial(k);
    for (int i = 0; i < k; ++i) {
      const int ni = r[static_cast<std::size_t>(i)] + 1;
      term /= factorial(ni);
      term *= std::pow(static_cast<double>(ni) / static_cast<double>(n), ni - 1);
    }
    lhs += term;
  });
  return {lhs, binomial(n - 1, k - 1)};
}

std::pair<double, double> abel_sum_check_hurwitz(int m, int n, double theta, double lambda) {
  if (m < 2 || m > 4 || n < 0 || n > 12) {
    throw std::domain_error("abel_sum_check_hurwitz: budget is m in 2..4, n <= 12");
  }
  if (theta <= 0.0 || lambda <= 0.0 || lambda >= 1.0) {
    throw std::domain_error("abel_sum_check_hurwitz: requires theta > 0, lambda in (0,1)");
  }
  const double base = theta / (m * lambda);
  const double n_fact = factorial(n);
  double lhs = 0.0;
  for_each_composition(n, m, 20'000'000, [&](const std::vector<int>& r) {
    double term = n_fact;
    for (int i = 0; i < m; ++i) {
      const int ni = r[static_cast<std::size_t>(i)];
      term /= factorial(ni);
      term *= std::pow(base + ni, ni);
    }
    lhs += term;
  });
  // (theta/lambda + n + alpha(m-1))^n with exact alpha symbols.
  double rhs = 0.0;
  const double x = theta / lambda + n;
  double alpha = 1.0;  // alpha^0(m-1)
  for (int ell = 0; ell <= n; ++ell) {
    rhs += binomial(n, ell) * std::pow(x, n - ell) * alpha;
    alpha *= static_cast<double>(m - 1 + ell);
  }
  return {lhs, rhs};
}

std::pair<double, double> abel_sum_check_a_variant(int n, int k) {
  if (n < 1 || n > 12 || k < 2 || k > n + 1) {
    throw std::domain_error("abel_sum_check_a_variant: budget is n <= 12, 2 <= k <= n+1");
  }
  const int top = n + 1 - k;
  double lhs = 0.0;
  for (int j = 0; j <= top; ++j) {
    lhs += binomial(top, j) * std::pow(static_cast<double>(j + 1), j - 1) *
           std::pow(static_cast<double>(n - j), n - j - k);
  }
  const double rhs = k * std::pow(static_cast<double>(n + 1), n - k) / (k - 1);
  return {lhs, rhs};
}

DensePmf enumerate_gw_progeny(double lambda, int n_max) {
  if (lambda <= 0.0 || lambda > 1.0) {
    throw std::domain_error("enumerate_gw_progeny: lambda must lie in (0,1]");
  }
  if (n_max < 1 || n_max > 60) {
    throw std::domain_error("enumerate_gw_progeny: budget is 1 <= n_max <= 60");
  }
  DensePmf d;
  d.p.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  d.p[1] = std::exp(-lambda);  // N = 0: no children at all
  // P(t) = sum_{j=1}^{t-1} Poisson(j; lambda) * P^{*j}(t-1). The convolution
  // powers only read values already final, so the fill is a plain DP.
  for (int t = 2; t <= n_max; ++t) {
    const int child_total = t - 1;
    std::vector<double> power(static_cast<std::size_t>(child_total) + 1, 0.0);
    power[0] = 1.0;  // P^{*0}
    double pois = std::exp(-lambda);
    double total = 0.0;
    for (int j = 1; j <= child_total; ++j) {
      // power <- power * P, truncated to 0..child_total
      std::vector<double> next(static_cast<std::size_t>(child_total) + 1, 0.0);
      for (int a = j - 1; a <= child_total; ++a) {
        if (power[static_cast<std::size_t>(a)] == 0.0) continue;
        for (int b = 1; a + b <= child_total; ++b) {
          next[static_cast<std::size_t>(a + b)] +=
              power[static_cast<std::size_t>(a)] * d.p[static_cast<std::size_t>(b)];
        }
      }
      power.swap(next);
      pois *= lambda / static_cast<double>(j);
      total += pois * power[static_cast<std::size_t>(child_total)];
    }
    d.p[static_cast<std::size_t>(t)] = total;
  }
  return d;
}

}  // namespace borel_claims::oracle
