#ifndef BOREL_CLAIMS_COMPOUNDS_HPP
#define BOREL_CLAIMS_COMPOUNDS_HPP

#include <cstdint>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "borel_claims/claim_number.hpp"
#include "borel_claims/numerics.hpp"

namespace borel_claims {

// Compound Poisson with Borel summands. lambda = 0 degenerates to
// Poisson(theta), theta = 0 to a point mass at zero; lambda > 1 only gives a
// sub-probability mass function and is rejected.
struct GpdParams {
  double theta = 1.0;
  double lambda = 0.5;
};

// The k-shifted family p_k(theta,lambda;n) = (theta+lambda n)^{n+k-1}
// e^{-(theta+lambda n)} / (S(k,theta,lambda) n!). k = 0 is the GPD, k = 1
// the compound Bartlett law. theta > 0 is required when k <= 0.
struct ShiftedMixtureParams {
  int k = 0;
  double theta = 1.0;
  double lambda = 0.5;
};

void validate(const GpdParams& p);
void validate(const ShiftedMixtureParams& p);

LogWeight gpd_pmf(const GpdParams& p, long n);
LogWeight bartlett_compound_pmf(double theta, double lambda, long n);

// (1-lambda)^m (theta + lambda n + lambda alpha(m-1))^n e^{-(theta+lambda n)}
// / n!, with the symbolic power expanded through the alpha symbols. Requires
// m >= 2; use bartlett_compound_pmf for m = 1.
LogWeight delaporte_compound_pmf(const DelaporteParams& p, long n);

// Thread-safe memo for S(k, theta + j*lambda, lambda) values. Shifts of the
// base theta by integer multiples of lambda land on exact keys.
class SCache {
 public:
  bool lookup(int k, double theta, double lambda, double* value) const;
  void store(int k, double theta, double lambda, double value);

 private:
  struct Key {
    int k;
    long long q;
    std::uint64_t lambda_bits;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const;
  };
  static Key make_key(int k, double theta, double lambda);

  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, double, KeyHash> map_;
};

enum class SMethod { series, recursion, closed };

// Normalizing constant S(k,theta,lambda) = sum_n (theta+lambda n)^{n+k-1}
// e^{-(theta+lambda n)}/n!. 'series' sums directly with a certified tail,
// 'recursion' unrolls S(k,theta) = theta S(k-1,theta) + lambda S(k,theta+
// lambda) upward for k >= 1 and descends via S(k) = (S(k+1,theta) - lambda
// S(k+1,theta+lambda))/theta for k <= -1, 'closed' uses the finite q-table
// (k >= 1 only).
double s_constant(int k, double theta, double lambda, SMethod method, SCache* cache = nullptr);

// Default method per k: closed for k >= 1, exact 1/theta for k = 0,
// downward recursion for k <= -1.
double s_constant(int k, double theta, double lambda, SCache* cache = nullptr);

// q_k(0..k-1), log scale, built by k-1 sweeps from q_1 = [1].
struct QTable {
  int k = 1;
  double theta = 1.0;
  double lambda = 0.5;
  std::vector<double> log_q;
};

QTable q_table(int k, double theta, double lambda);

// P{V_k = n} = q_k(n) / sum_l q_k(l) on {0,...,k-1}.
struct VDistribution {
  int k = 1;
  std::vector<double> probs;
};

VDistribution v_distribution(int k, double theta, double lambda);

LogWeight shifted_mixture_pmf(const ShiftedMixtureParams& p, long n);
LogWeight shifted_mixture_pmf(const ShiftedMixtureParams& p, long n, double log_s);

enum class MomentMethod { lemma, shifted_power };

// E[X_k(theta,lambda)^order], either through the order-lowering lemma
// E[X_k^m] = (S(k+1,th+la)/S(k,th)) sum_{l<m} C(m-1,l) E[X_{k+1}(th+la)^l]
// or by inverting E[(theta+lambda X_k)^m] = S(k+m)/S(k) triangularly.
double mixture_moment(const ShiftedMixtureParams& p, int order, MomentMethod method,
                      SCache* cache = nullptr);

std::pair<double, double> mixture_mean_var(const ShiftedMixtureParams& p, SCache* cache = nullptr);

}  // namespace borel_claims

#endif
