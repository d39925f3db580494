#include "borel_claims/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "borel_claims/compounds.hpp"

namespace borel_claims {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

Rng Rng::stream(std::uint64_t stream_id) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream_id + 1)));
}

double Rng::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

namespace {

long poisson_inversion(Rng& rng, double mu) {
  const double u = rng.uniform();
  double p = std::exp(-mu);
  double cdf = p;
  long k = 0;
  while (u >= cdf) {
    ++k;
    p *= mu / static_cast<double>(k);
    cdf += p;
    if (p < 1e-280) break;  // u within rounding of 1; the cdf cannot grow further
    if (k > 2000) throw std::runtime_error("sample_poisson: inversion ran away");
  }
  return k;
}

}  // namespace

long sample_poisson(Rng& rng, double mu) {
  if (!(mu >= 0.0)) throw std::domain_error("sample_poisson: mean must be >= 0");
  long total = 0;
  while (mu > 10.0) {
    total += poisson_inversion(rng, 8.0);
    mu -= 8.0;
  }
  return total + poisson_inversion(rng, mu);
}

long sample_geometric(Rng& rng, double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    throw std::domain_error("sample_geometric: lambda must lie in (0,1)");
  }
  const double u = rng.uniform();
  return static_cast<long>(std::floor(std::log1p(-u) / std::log(lambda)));
}

long sample_negbin(Rng& rng, double lambda, long m) {
  if (m < 0) throw std::domain_error("sample_negbin: shape must be >= 0");
  long total = 0;
  for (long i = 0; i < m; ++i) total += sample_geometric(rng, lambda);
  return total;
}

long sample_borel(Rng& rng, double lambda, long cap) {
  if (!(lambda > 0.0) || !(lambda <= 1.0)) {
    throw std::domain_error("sample_borel: lambda must lie in (0,1]");
  }
  long total = 1;
  long current = 1;
  while (current > 0) {
    const long next = sample_poisson(rng, lambda * static_cast<double>(current));
    total += next;
    if (total > cap) {
      throw std::runtime_error("sample_borel: accumulated-individuals cap exceeded");
    }
    current = next;
  }
  return total;
}

long sample_borel_tanner(Rng& rng, double lambda, int m, long cap) {
  if (m < 1) throw std::domain_error("sample_borel_tanner: m must be >= 1");
  long total = 0;
  for (int i = 0; i < m; ++i) total += sample_borel(rng, lambda, cap);
  return total;
}

FamilySampler::FamilySampler(const FamilySpec& spec) : spec_(spec) {
  validate(spec);
  if (spec.kind == FamilySpec::Kind::shifted) {
    if (spec.k < 0) {
      throw std::domain_error(
          "FamilySampler: no compound representation exists for shifted k < 0");
    }
    if (spec.k >= 1) {
      const VDistribution v = v_distribution(spec.k, spec.theta, spec.lambda);
      double acc = 0.0;
      for (double p : v.probs) {
        acc += p;
        v_cdf_.push_back(acc);
      }
    }
  }
}

long FamilySampler::operator()(Rng& rng) const {
  switch (spec_.kind) {
    case FamilySpec::Kind::borel:
      return sample_borel(rng, spec_.lambda);
    case FamilySpec::Kind::borel_tanner:
      return sample_borel_tanner(rng, spec_.lambda, spec_.m);
    default:
      break;
  }
  // Count layer.
  long count = 0;
  long shift = 0;
  switch (spec_.kind) {
    case FamilySpec::Kind::gpd:
      count = sample_poisson(rng, spec_.theta);
      break;
    case FamilySpec::Kind::bartlett:
      count = sample_poisson(rng, spec_.theta) + sample_geometric(rng, spec_.lambda);
      break;
    case FamilySpec::Kind::delaporte:
      count = sample_poisson(rng, spec_.theta) + sample_negbin(rng, spec_.lambda, spec_.m);
      break;
    case FamilySpec::Kind::shifted: {
      if (spec_.k >= 1) {
        const double u = rng.uniform();
        long v = 0;
        while (v + 1 < static_cast<long>(v_cdf_.size()) &&
               u >= v_cdf_[static_cast<std::size_t>(v)]) {
          ++v;
        }
        shift = v;
      }
      count = shift + sample_poisson(rng, spec_.theta) +
              sample_negbin(rng, spec_.lambda, spec_.k + shift);
      break;
    }
    default:
      throw std::logic_error("FamilySampler: unhandled family");
  }
  if (spec_.lambda == 0.0) return count;  // unit summands (gpd degenerate)
  long z = 0;
  for (long i = 0; i < count; ++i) z += sample_borel(rng, spec_.lambda);
  return z;
}

InverseCdfSampler::InverseCdfSampler(const LogPmf& pmf) {
  double acc = 0.0;
  cdf_.reserve(pmf.log_probs.size());
  for (double lp : pmf.log_probs) {
    acc += std::exp(lp);
    cdf_.push_back(acc);
  }
}

long InverseCdfSampler::operator()(Rng& rng) const {
  const double u = rng.uniform();
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return static_cast<long>(cdf_.size());  // beyond support
  return static_cast<long>(it - cdf_.begin());
}

SampleStats monte_carlo_check(const LogPmf& target, const std::function<long(Rng&)>& sampler,
                              long n_samples, std::uint64_t seed) {
  if (n_samples < 10000) {
    throw std::domain_error("monte_carlo_check: need at least 10^4 samples");
  }
  SampleStats stats;
  stats.seed = seed;
  stats.n_samples = n_samples;
  stats.counts.assign(target.log_probs.size(), 0);
  Rng rng(seed);
  for (long i = 0; i < n_samples; ++i) {
    long x;
    try {
      x = sampler(rng);
    } catch (const std::runtime_error&) {
      ++stats.cap_errors;
      continue;
    }
    if (x >= 0 && x <= target.max_n()) {
      ++stats.counts[static_cast<std::size_t>(x)];
    } else {
      ++stats.overflow;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n_samples);
  double l1 = 0.0;
  for (long n = 0; n <= target.max_n(); ++n) {
    const double emp = static_cast<double>(stats.counts[static_cast<std::size_t>(n)]) * inv_n;
    const double p = target.prob(n);
    const double dev = std::fabs(emp - p);
    l1 += dev;
    stats.max_abs_dev = std::max(stats.max_abs_dev, dev);
    const double var = p * (1.0 - p) * static_cast<double>(n_samples);
    if (var > 0.0) {
      const double z = std::fabs(static_cast<double>(stats.counts[static_cast<std::size_t>(n)]) -
                                 p * static_cast<double>(n_samples)) /
                       std::sqrt(var);
      stats.max_z = std::max(stats.max_z, z);
    }
  }
  stats.tv_distance = 0.5 * (l1 + static_cast<double>(stats.overflow) * inv_n +
                             target.tail_mass_bound);
  return stats;
}

double two_sample_chi_square_pvalue(const std::vector<long>& a, const std::vector<long>& b) {
  if (a.size() != b.size()) {
    throw std::domain_error("two_sample_chi_square_pvalue: count vectors must align");
  }
  double na = 0.0, nb = 0.0;
  for (long x : a) na += static_cast<double>(x);
  for (long x : b) nb += static_cast<double>(x);
  if (na == 0.0 || nb == 0.0) throw std::domain_error("two_sample_chi_square_pvalue: empty sample");
  // Merge adjacent outcomes until each pooled bin holds at least 10 draws.
  std::vector<std::pair<double, double>> bins;
  double ca = 0.0, cb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca += static_cast<double>(a[i]);
    cb += static_cast<double>(b[i]);
    if (ca + cb >= 10.0) {
      bins.emplace_back(ca, cb);
      ca = cb = 0.0;
    }
  }
  if (ca + cb > 0.0) {
    if (bins.empty()) {
      bins.emplace_back(ca, cb);
    } else {
      bins.back().first += ca;
      bins.back().second += cb;
    }
  }
  if (bins.size() < 2) return 1.0;
  const double ra = std::sqrt(nb / na);
  const double rb = std::sqrt(na / nb);
  double stat = 0.0;
  for (const auto& [xa, xb] : bins) {
    const double num = xa * ra - xb * rb;
    stat += num * num / (xa + xb);
  }
  const double df = static_cast<double>(bins.size() - 1);
  return gamma_q(df / 2.0, stat / 2.0);
}

}  // namespace borel_claims
