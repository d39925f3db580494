#ifndef BOREL_CLAIMS_CLAIM_NUMBER_HPP
#define BOREL_CLAIMS_CLAIM_NUMBER_HPP

#include <utility>

#include "borel_claims/numerics.hpp"

namespace borel_claims {

// Poisson(theta) + Geometric(lambda) claim count. theta = 0 degenerates to
// the pure geometric law.
struct BartlettParams {
  double theta = 1.0;
  double lambda = 0.5;
};

// Poisson(theta) + NegBin(lambda, m); m = 1 coincides with Bartlett.
struct DelaporteParams {
  double theta = 1.0;
  double lambda = 0.5;
  int m = 1;
};

void validate(const BartlettParams& p);
void validate(const DelaporteParams& p);

// (1-lambda) lambda^n e^{-theta} sum_{k<=n} (theta/lambda)^k / k!.
LogWeight bartlett_pmf(const BartlettParams& p, long n);

// sum_{k<=n} C(k+m-1,k) lambda^k (1-lambda)^m theta^{n-k} e^{-theta}/(n-k)!.
LogWeight delaporte_pmf(const DelaporteParams& p, long n);

std::pair<double, double> bartlett_mean_var(const BartlettParams& p);
std::pair<double, double> delaporte_mean_var(const DelaporteParams& p);

}  // namespace borel_claims

#endif
