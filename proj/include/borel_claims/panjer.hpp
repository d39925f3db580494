#ifndef BOREL_CLAIMS_PANJER_HPP
#define BOREL_CLAIMS_PANJER_HPP

#include <optional>
#include <utility>
#include <vector>

#include "borel_claims/families.hpp"
#include "borel_claims/log_pmf.hpp"
#include "borel_claims/severity.hpp"

namespace borel_claims {

// Claim-number families whose recursion has the one-branch form
// p(theta;n) = (a + b/n) p(theta+lambda; n-1). The coefficient pair at the
// current shift level theta':
//   gpd:        a = theta' lambda/(theta'+lambda), b = theta'^2/(theta'+lambda)
//   bartlett:   a = lambda,                        b = theta'
//   shifted(k): (a,b) = c (lambda, theta') with c = S(k,theta'+lambda)/S(k,theta')
// so shifted(0) reduces to the gpd pair and shifted(1) to the bartlett pair.
struct PanjerFamily {
  enum class Tag { gpd, bartlett, shifted };
  Tag tag = Tag::gpd;
  int k = 0;  // used when tag == shifted

  static PanjerFamily gpd() { return {Tag::gpd, 0}; }
  static PanjerFamily bartlett() { return {Tag::bartlett, 1}; }
  static PanjerFamily shifted(int k) { return {Tag::shifted, k}; }
};

// Triangular table q(theta + j*lambda, lambda; n) for j + n <= n_max; access
// outside the computed triangle is an error, not zero.
class RecursionGrid {
 public:
  explicit RecursionGrid(long n_max);
  long n_max() const { return n_max_; }
  double at(long j, long n) const;
  void set(long j, long n, double log_value);

 private:
  std::size_t index(long j, long n) const;
  long n_max_;
  std::vector<double> log_v_;
};

// Aggregate-claim pmf over 0..n_max by the parameter-shifting triangular
// scheme; tail bounds come from the count mixture with exact severity
// convolutions, not from the recursion output itself.
LogPmf aggregate_pmf(const PanjerFamily& family, const SeverityPmf& severity, double theta,
                     double lambda, long n_max);

// Two-branch scheme over the (shift, shape, mass) pyramid for the compound
// Delaporte claim number, m >= 2. literal_b1 switches the same-shape branch
// to the (0, theta + lambda n) coefficient reading with n the aggregate
// index; it exists for comparison against the oracle and is not the default.
LogPmf aggregate_pmf_delaporte(const SeverityPmf& severity, double theta, double lambda, int m,
                               long n_max, bool literal_b1 = false);

// The (a, b) pair of the one-branch recursion at shift level theta.
std::pair<double, double> panjer_coefficients(const PanjerFamily& family, double theta,
                                              double lambda);

// Wald moments of the aggregate law for a count family.
std::pair<double, double> aggregate_mean_var(const FamilySpec& count, const SeverityPmf& severity);

// Default support: ceil(mean + 10 stddev).
long default_aggregate_support(const FamilySpec& count, const SeverityPmf& severity);

struct StopLossResult {
  double value = 0.0;       // sum over the computed support
  double tail_bound = 0.0;  // bound on the omitted part
};

// E[(T-d)^+] over the computed support of q. Errors out when the certified
// remainder exceeds max_tail_bound.
StopLossResult stop_loss(const LogPmf& q, long d,
                         double max_tail_bound = std::numeric_limits<double>::infinity());

}  // namespace borel_claims

#endif
