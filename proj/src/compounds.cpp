#include "borel_claims/compounds.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace borel_claims {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr long kSeriesCap = 100000;
}  // namespace

void validate(const GpdParams& p) {
  if (!(p.theta >= 0.0)) throw std::domain_error("gpd: theta must be >= 0");
  if (!(p.lambda >= 0.0) || !(p.lambda <= 1.0)) {
    throw std::domain_error(
        "gpd: lambda must lie in [0,1] (lambda > 1 gives a sub-probability mass function)");
  }
}

void validate(const ShiftedMixtureParams& p) {
  if (!(p.lambda > 0.0) || !(p.lambda < 1.0)) {
    throw std::domain_error("shifted mixture: lambda must lie in (0,1)");
  }
  if (!(p.theta >= 0.0)) throw std::domain_error("shifted mixture: theta must be >= 0");
  if (p.k <= 0 && !(p.theta > 0.0)) {
    throw std::domain_error("shifted mixture: theta must be > 0 when k <= 0");
  }
}

LogWeight gpd_pmf(const GpdParams& p, long n) {
  validate(p);
  if (n < 0) return LogWeight::zero();
  if (p.theta == 0.0) return n == 0 ? LogWeight::one() : LogWeight::zero();
  const double a = p.theta + p.lambda * static_cast<double>(n);
  const double log_p = std::log(p.theta) + static_cast<double>(n - 1) * std::log(a) - a -
                       log_factorial(n);
  return LogWeight::from_log(log_p);
}

LogWeight bartlett_compound_pmf(double theta, double lambda, long n) {
  if (!(theta >= 0.0)) throw std::domain_error("compound Bartlett: theta must be >= 0");
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    throw std::domain_error("compound Bartlett: lambda must lie in (0,1)");
  }
  if (n < 0) return LogWeight::zero();
  const double a = theta + lambda * static_cast<double>(n);
  double log_p = std::log1p(-lambda) - a - log_factorial(n);
  if (n > 0) log_p += static_cast<double>(n) * std::log(a);
  return LogWeight::from_log(log_p);
}

LogWeight delaporte_compound_pmf(const DelaporteParams& p, long n) {
  validate(p);
  if (p.m < 2) {
    throw std::domain_error("compound Delaporte: m must be >= 2 (use the compound Bartlett law for m = 1)");
  }
  if (n < 0) return LogWeight::zero();
  const double a = p.theta + p.lambda * static_cast<double>(n);
  const LogWeight x = a > 0.0 ? LogWeight::from_log(std::log(a)) : LogWeight::zero();
  const LogWeight power = alpha_binomial_expand(x, p.lambda, p.m, n);
  const double log_p = p.m * std::log1p(-p.lambda) + power.log_value() - a - log_factorial(n);
  return LogWeight::from_log(log_p);
}

// ---------------------------------------------------------------------------
// S cache

SCache::Key SCache::make_key(int k, double theta, double lambda) {
  return Key{k, std::llround(theta / lambda * 1048576.0), std::bit_cast<std::uint64_t>(lambda)};
}

std::size_t SCache::KeyHash::operator()(const Key& key) const {
  std::size_t h = std::hash<long long>()(key.q);
  h ^= std::hash<int>()(key.k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= std::hash<std::uint64_t>()(key.lambda_bits) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool SCache::lookup(int k, double theta, double lambda, double* value) const {
  std::shared_lock lock(mutex_);
  auto it = map_.find(make_key(k, theta, lambda));
  if (it == map_.end()) return false;
  *value = it->second;
  return true;
}

void SCache::store(int k, double theta, double lambda, double value) {
  std::unique_lock lock(mutex_);
  map_.emplace(make_key(k, theta, lambda), value);
}

// ---------------------------------------------------------------------------
// S constants

namespace {

void validate_s_args(int k, double theta, double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    throw std::domain_error("s_constant: lambda must lie in (0,1)");
  }
  if (!(theta >= 0.0)) throw std::domain_error("s_constant: theta must be >= 0");
  if (k <= 0 && !(theta > 0.0)) {
    throw std::domain_error("s_constant: theta must be > 0 when k <= 0");
  }
}

double s_series(int k, double theta, double lambda) {
  double sum = 0.0;
  for (long n = 0; n < kSeriesCap; ++n) {
    const double a = theta + lambda * static_cast<double>(n);
    const double e = static_cast<double>(n + k - 1);
    double log_t = -a - log_factorial(n);
    if (e != 0.0) {
      if (a == 0.0) continue;  // 0^e with e > 0 (k >= 2, theta = 0)
      log_t += e * std::log(a);
    }
    const double t = std::exp(log_t);
    sum += t;
    if (n >= 8 && n + k - 1 > 0) {
      const double r = detail::power_series_ratio_bound(theta, lambda, k - 1, n);
      if (r < 1.0 && detail::geometric_tail_mass(t, r) < 1e-16 * sum) return sum;
    }
  }
  throw std::runtime_error("s_constant: series failed its tail bound within the iteration cap");
}

double s_recursion(int k, double theta, double lambda, SCache& cache);

double s_recursion_term_sum(int k, double theta, double lambda, SCache& cache) {
  // S(k,theta) = sum_n lambda^n (theta+lambda n) S(k-1, theta+lambda n); the
  // n = 0 term at theta = 0 is the limit theta*S(k-1,theta) -> [k==1].
  double sum = 0.0;
  double weight = 1.0;  // lambda^n
  for (long n = 0; n < kSeriesCap; ++n) {
    const double a = theta + lambda * static_cast<double>(n);
    double t;
    if (a == 0.0) {
      t = (k == 1) ? weight : 0.0;
    } else {
      t = weight * a * s_recursion(k - 1, a, lambda, cache);
    }
    sum += t;
    if (n >= 4 && t > 0.0) {
      const double r = lambda * std::pow(1.0 + lambda / a, std::max(k - 1, 1));
      if (r < 1.0 && detail::geometric_tail_mass(t, r) < 1e-16 * sum) return sum;
    }
    weight *= lambda;
  }
  throw std::runtime_error("s_constant: recursion failed its tail bound within the iteration cap");
}

double s_recursion(int k, double theta, double lambda, SCache& cache) {
  if (k == 0) return 1.0 / theta;
  double cached;
  if (cache.lookup(k, theta, lambda, &cached)) return cached;
  double value;
  if (k > 0) {
    value = s_recursion_term_sum(k, theta, lambda, cache);
  } else {
    value = (s_recursion(k + 1, theta, lambda, cache) -
             lambda * s_recursion(k + 1, theta + lambda, lambda, cache)) /
            theta;
  }
  cache.store(k, theta, lambda, value);
  return value;
}

double s_closed(int k, double theta, double lambda) {
  if (k < 1) throw std::domain_error("s_constant: the closed method requires k >= 1");
  const QTable table = q_table(k, theta, lambda);
  const double log_sum = log_sum_exp(std::span<const double>(table.log_q));
  return std::exp(log_sum) / (1.0 - lambda);
}

}  // namespace

double s_constant(int k, double theta, double lambda, SMethod method, SCache* cache) {
  validate_s_args(k, theta, lambda);
  switch (method) {
    case SMethod::series:
      return s_series(k, theta, lambda);
    case SMethod::closed:
      return s_closed(k, theta, lambda);
    case SMethod::recursion: {
      SCache local;
      SCache& c = cache ? *cache : local;
      return s_recursion(k, theta, lambda, c);
    }
  }
  throw std::logic_error("s_constant: unknown method");
}

double s_constant(int k, double theta, double lambda, SCache* cache) {
  validate_s_args(k, theta, lambda);
  if (k == 0) return 1.0 / theta;
  if (k >= 1) return s_closed(k, theta, lambda);
  return s_constant(k, theta, lambda, SMethod::recursion, cache);
}

// ---------------------------------------------------------------------------
// q table and V distribution

QTable q_table(int k, double theta, double lambda) {
  if (k < 1) throw std::domain_error("q_table: k must be >= 1");
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    throw std::domain_error("q_table: lambda must lie in (0,1)");
  }
  if (!(theta >= 0.0)) throw std::domain_error("q_table: theta must be >= 0");
  const double log_one_minus = std::log1p(-lambda);
  const double log_lambda_sq = 2.0 * std::log(lambda);
  std::vector<double> log_q{0.0};  // q_1(0) = 1
  for (int kk = 2; kk <= k; ++kk) {
    std::vector<double> next(static_cast<std::size_t>(kk), kNegInf);
    for (int n = 0; n < kk; ++n) {
      const double a = theta + lambda * static_cast<double>(n);
      double first = kNegInf;
      if (n < kk - 1 && a > 0.0) {
        first = std::log(a) + log_q[static_cast<std::size_t>(n)] - log_one_minus;
      }
      double second = kNegInf;
      if (n >= 1 && kk + n - 2 > 0) {
        second = log_lambda_sq + std::log(static_cast<double>(kk + n - 2)) +
                 log_q[static_cast<std::size_t>(n - 1)] - 2.0 * log_one_minus;
      }
      next[static_cast<std::size_t>(n)] = log_sum_exp(first, second);
    }
    log_q.swap(next);
  }
  return QTable{k, theta, lambda, std::move(log_q)};
}

VDistribution v_distribution(int k, double theta, double lambda) {
  const QTable table = q_table(k, theta, lambda);
  const double log_norm = log_sum_exp(std::span<const double>(table.log_q));
  std::vector<double> probs(table.log_q.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = std::exp(table.log_q[i] - log_norm);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return VDistribution{k, std::move(probs)};
}

// ---------------------------------------------------------------------------
// Shifted mixture pmf and moments

LogWeight shifted_mixture_pmf(const ShiftedMixtureParams& p, long n) {
  validate(p);
  return shifted_mixture_pmf(p, n, std::log(s_constant(p.k, p.theta, p.lambda)));
}

LogWeight shifted_mixture_pmf(const ShiftedMixtureParams& p, long n, double log_s) {
  validate(p);
  if (n < 0) return LogWeight::zero();
  const double a = p.theta + p.lambda * static_cast<double>(n);
  const double e = static_cast<double>(n + p.k - 1);
  double log_p = -a - log_factorial(n) - log_s;
  if (e != 0.0) {
    if (a == 0.0) return LogWeight::zero();  // theta = 0, k >= 2, n = 0
    log_p += e * std::log(a);
  }
  return LogWeight::from_log(log_p);
}

namespace {

double moment_lemma(int k, double theta, double lambda, int order, SCache& cache) {
  if (order == 0) return 1.0;
  const double ratio = s_constant(k + 1, theta + lambda, lambda, &cache) /
                       s_constant(k, theta, lambda, &cache);
  double sum = 0.0;
  for (int ell = 0; ell < order; ++ell) {
    sum += std::exp(log_binomial(order - 1, ell).log_value()) *
           moment_lemma(k + 1, theta + lambda, lambda, ell, cache);
  }
  return ratio * sum;
}

double moment_shifted_power(const ShiftedMixtureParams& p, int order, SCache& cache) {
  const double s0 = s_constant(p.k, p.theta, p.lambda, &cache);
  std::vector<double> moments(static_cast<std::size_t>(order) + 1);
  moments[0] = 1.0;
  for (int m = 1; m <= order; ++m) {
    const double target = s_constant(p.k + m, p.theta, p.lambda, &cache) / s0;
    double rest = 0.0;
    for (int j = 0; j < m; ++j) {
      rest += std::exp(log_binomial(m, j).log_value()) * std::pow(p.theta, m - j) *
              std::pow(p.lambda, j) * moments[static_cast<std::size_t>(j)];
    }
    moments[static_cast<std::size_t>(m)] = (target - rest) / std::pow(p.lambda, m);
  }
  return moments[static_cast<std::size_t>(order)];
}

}  // namespace

double mixture_moment(const ShiftedMixtureParams& p, int order, MomentMethod method,
                      SCache* cache) {
  validate(p);
  if (order < 0) throw std::domain_error("mixture_moment: order must be >= 0");
  if (order == 0) return 1.0;
  SCache local;
  SCache& c = cache ? *cache : local;
  if (method == MomentMethod::lemma) return moment_lemma(p.k, p.theta, p.lambda, order, c);
  return moment_shifted_power(p, order, c);
}

std::pair<double, double> mixture_mean_var(const ShiftedMixtureParams& p, SCache* cache) {
  SCache local;
  SCache& c = cache ? *cache : local;
  const double m1 = mixture_moment(p, 1, MomentMethod::lemma, &c);
  const double m2 = mixture_moment(p, 2, MomentMethod::lemma, &c);
  return {m1, m2 - m1 * m1};
}

}  // namespace borel_claims
