#ifndef BOREL_CLAIMS_LOG_PMF_HPP
#define BOREL_CLAIMS_LOG_PMF_HPP

#include <functional>
#include <limits>
#include <vector>

namespace borel_claims {

// A truncated probability mass function on 0..max_n() stored as log-weights,
// together with certified bounds on the mass and first moment beyond the
// truncation point.
struct LogPmf {
  std::vector<double> log_probs;
  double tail_mass_bound = 0.0;
  double tail_mean_bound = 0.0;  // bound on sum_{n > max_n} n p(n)

  long max_n() const { return static_cast<long>(log_probs.size()) - 1; }
  double log_at(long n) const {
    return (n >= 0 && n < static_cast<long>(log_probs.size()))
               ? log_probs[static_cast<std::size_t>(n)]
               : -std::numeric_limits<double>::infinity();
  }
  double prob(long n) const;
  double total_mass() const;
  double partial_mean() const;  // sum n p(n) over the stored support
};

struct TailBounds {
  double mass = 0.0;
  double mean = 0.0;
};

using LogEval = std::function<double(long)>;
// ratio(n) must dominate p(j+1)/p(j) for every j >= n and be nonincreasing
// in n; values >= 1 mean "no certificate at this point yet".
using RatioBound = std::function<double(long)>;

// Certified bounds on the mass and first moment of {n > from}, obtained by
// summing exact terms past `from` until the geometric certificate is at most
// rel_goal of the accumulated bound.
TailBounds tail_beyond(const LogEval& eval, const RatioBound& ratio, long from,
                       double rel_goal = 0.01, long extend_cap = 400000);

// Table over 0..n_max with tail bounds computed at n_max.
LogPmf build_log_pmf_fixed(const LogEval& eval, const RatioBound& ratio, long n_max);

// Adaptive truncation: the smallest table whose certified tail mass is below
// eps (subject to the hard cap).
LogPmf build_log_pmf(const LogEval& eval, const RatioBound& ratio, double eps,
                     long n_cap = 1 << 20);

}  // namespace borel_claims

#endif
