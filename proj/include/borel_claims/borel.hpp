#ifndef BOREL_CLAIMS_BOREL_HPP
#define BOREL_CLAIMS_BOREL_HPP

#include <utility>

#include "borel_claims/numerics.hpp"

namespace borel_claims {

// Offspring mean of the Poisson branching step. The process terminates
// almost surely iff lambda <= 1; moments additionally need lambda < 1.
struct BorelParams {
  double lambda = 0.5;
};

struct BorelTannerParams {
  double lambda = 0.5;
  int m = 1;  // initial claims; support starts at m
};

void validate(const BorelParams& p);
void validate(const BorelTannerParams& p);

// P{Y=n} = (lambda n)^{n-1} e^{-lambda n} / n! on n >= 1.
LogWeight borel_pmf(const BorelParams& p, long n);

// P{Y^{(m)}=n} = m (lambda n)^{n-m} e^{-lambda n} / (n (n-m)!) on n >= m.
LogWeight borel_tanner_pmf(const BorelTannerParams& p, long n);

// (mean, variance): 1/(1-lambda) and lambda/(1-lambda)^3; rejects lambda = 1.
std::pair<double, double> borel_mean_var(const BorelParams& p);
std::pair<double, double> borel_tanner_mean_var(const BorelTannerParams& p);

// The fixed point of G = z * exp(lambda (G - 1)) on [0,1], by iteration from
// G = z until successive iterates differ by < 1e-14 (cap 10000).
double borel_pgf(const BorelParams& p, double z);

}  // namespace borel_claims

#endif
