#ifndef BOREL_CLAIMS_SIMULATE_HPP
#define BOREL_CLAIMS_SIMULATE_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "borel_claims/families.hpp"
#include "borel_claims/log_pmf.hpp"

namespace borel_claims {

// All sampling runs off mt19937_64 (fully pinned by the standard) with an
// explicit 53-bit uniform mapping, so a seed reproduces bit-identical
// streams. Parallel batches take independently derived streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  Rng stream(std::uint64_t stream_id) const;

  std::uint64_t next() { return gen_(); }
  double uniform();  // [0, 1)
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

// Exact draws; inversion by sequential search, split into chunks for large
// means so a single code path covers every rate that arises here.
long sample_poisson(Rng& rng, double mu);
long sample_geometric(Rng& rng, double lambda);           // P{M=n} = lambda^n (1-lambda)
long sample_negbin(Rng& rng, double lambda, long m);

// Total progeny of the Poisson(lambda) branching process started from one
// individual; tracks only the current generation size. Exceeding the
// accumulated-individuals cap raises, it never truncates silently.
long sample_borel(Rng& rng, double lambda, long cap = 10'000'000);
long sample_borel_tanner(Rng& rng, double lambda, int m, long cap = 10'000'000);

// One draw from any family: count layer plus that many Borel summands. The
// shifted(k >= 1) route draws V_k, then Poisson(theta) + NegBin(lambda,
// k+V_k) on top of the shift.
class FamilySampler {
 public:
  explicit FamilySampler(const FamilySpec& spec);
  long operator()(Rng& rng) const;

 private:
  FamilySpec spec_;
  std::vector<double> v_cdf_;  // shifted family only
};

// Inverse-CDF sampler over a truncated pmf; draws beyond the stored support
// report max_n()+1.
class InverseCdfSampler {
 public:
  explicit InverseCdfSampler(const LogPmf& pmf);
  long operator()(Rng& rng) const;

 private:
  std::vector<double> cdf_;
};

struct SampleStats {
  std::uint64_t seed = 0;
  long n_samples = 0;
  std::vector<long> counts;  // outcomes 0..target.max_n()
  long overflow = 0;         // draws beyond the stored support
  long cap_errors = 0;       // branching-cap failures, recorded not hidden
  double tv_distance = 0.0;  // includes overflow and the target tail bound
  double max_abs_dev = 0.0;
  double max_z = 0.0;
};

SampleStats monte_carlo_check(const LogPmf& target, const std::function<long(Rng&)>& sampler,
                              long n_samples, std::uint64_t seed);

// Two-sample chi-square homogeneity p-value over outcome counts (bins with
// small pooled counts are merged).
double two_sample_chi_square_pvalue(const std::vector<long>& a, const std::vector<long>& b);

}  // namespace borel_claims

#endif
