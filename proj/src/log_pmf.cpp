#include "borel_claims/log_pmf.hpp"

#include <cmath>
#include <stdexcept>

#include "borel_claims/numerics.hpp"

namespace borel_claims {

double LogPmf::prob(long n) const { return std::exp(log_at(n)); }

double LogPmf::total_mass() const {
  double s = 0.0;
  for (double lp : log_probs) s += std::exp(lp);
  return s;
}

double LogPmf::partial_mean() const {
  double s = 0.0;
  for (std::size_t n = 1; n < log_probs.size(); ++n) {
    s += static_cast<double>(n) * std::exp(log_probs[n]);
  }
  return s;
}

TailBounds tail_beyond(const LogEval& eval, const RatioBound& ratio, long from,
                       double rel_goal, long extend_cap) {
  double mass = 0.0;
  double mean = 0.0;
  long frontier = from;
  for (long step = 0; step <= extend_cap; ++step) {
    const double r = ratio(frontier);
    if (r < 0.999) {
      const double t = std::exp(eval(frontier));
      const double cert_mass = detail::geometric_tail_mass(t, r);
      const double cert_mean = detail::geometric_tail_first_moment(frontier, t, r);
      if (cert_mass <= rel_goal * (mass + cert_mass) || cert_mass < 1e-300) {
        return {mass + cert_mass, mean + cert_mean};
      }
    }
    ++frontier;
    const double t = std::exp(eval(frontier));
    mass += t;
    mean += static_cast<double>(frontier) * t;
  }
  throw std::runtime_error("tail_beyond: no usable tail certificate within the extension cap");
}

LogPmf build_log_pmf_fixed(const LogEval& eval, const RatioBound& ratio, long n_max) {
  if (n_max < 0) throw std::domain_error("build_log_pmf_fixed: n_max must be >= 0");
  LogPmf pmf;
  pmf.log_probs.resize(static_cast<std::size_t>(n_max) + 1);
  for (long n = 0; n <= n_max; ++n) pmf.log_probs[static_cast<std::size_t>(n)] = eval(n);
  const TailBounds tail = tail_beyond(eval, ratio, n_max);
  pmf.tail_mass_bound = tail.mass;
  pmf.tail_mean_bound = tail.mean;
  return pmf;
}

LogPmf build_log_pmf(const LogEval& eval, const RatioBound& ratio, double eps, long n_cap) {
  if (!(eps > 0.0)) throw std::domain_error("build_log_pmf: eps must be > 0");
  LogPmf pmf;
  for (long n = 0; n <= n_cap; ++n) {
    pmf.log_probs.push_back(eval(n));
    if (n >= 2) {
      const double r = ratio(n);
      if (r < 0.999 &&
          detail::geometric_tail_mass(std::exp(pmf.log_probs.back()), r) < eps) {
        const TailBounds tail = tail_beyond(eval, ratio, n);
        pmf.tail_mass_bound = tail.mass;
        pmf.tail_mean_bound = tail.mean;
        return pmf;
      }
    }
  }
  throw std::runtime_error("build_log_pmf: tail bound did not reach eps within the cap");
}

}  // namespace borel_claims
