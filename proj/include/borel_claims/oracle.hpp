#ifndef BOREL_CLAIMS_ORACLE_HPP
#define BOREL_CLAIMS_ORACLE_HPP

#include <utility>
#include <vector>

// Brute-force referees. Everything here runs in plain linear-scale doubles,
// deliberately independent of the log-space kernel it is used to check.

namespace borel_claims::oracle {

struct DensePmf {
  std::vector<double> p;  // probabilities on 0..max_n()

  long max_n() const { return static_cast<long>(p.size()) - 1; }
  double at(long n) const {
    return (n >= 0 && n < static_cast<long>(p.size())) ? p[static_cast<std::size_t>(n)] : 0.0;
  }
  static DensePmf point_mass(long n, long n_max);
};

DensePmf convolve(const DensePmf& a, const DensePmf& b, long n_max);
DensePmf convolve_power(const DensePmf& a, int m, long n_max);

// sum_m count(m) * summand^{*m}(n) on 0..n_max. The summand must live on the
// positive integers so each point is a finite sum.
DensePmf compound_by_mixing(const DensePmf& count, const DensePmf& summand, long n_max);

// Inverts the mixing map against Borel(lambda) summands: the unique c with
// sum_m c(m) Borel^{*m} = target on 0..m_max. Entries may be negative; that
// is the point of the counterexample.
std::vector<double> borel_deconvolve(const DensePmf& target, double lambda, long m_max);

// Linear-scale reference laws.
DensePmf poisson_dense(double theta, long n_max);
DensePmf geometric_dense(double lambda, long n_max);
DensePmf negbin_dense(double lambda, int m, long n_max);
DensePmf bartlett_dense(double theta, double lambda, long n_max);
DensePmf delaporte_dense(double theta, double lambda, int m, long n_max);
DensePmf borel_dense(double lambda, long n_max);
DensePmf borel_tanner_dense(double lambda, int m, long n_max);

// Exhaustive-composition identities. Each returns (lhs, rhs) for the caller
// to assert; lhs is enumerated, rhs is the closed form.
std::pair<double, double> multinomial_identity_check(int n, int k);

// Abel sums: the Hurwitz multinomial form
//   sum over (n_1..n_m) in N_0^m, sum = n of n!/(prod n_i!) prod (theta/(m lambda)+n_i)^{n_i}
//   = (theta/lambda + n + alpha(m-1))^n
// and the single-index form
//   sum_{j=0}^{n+1-k} C(n+1-k,j) (j+1)^{j-1} (n-j)^{n-j-k} = k (n+1)^{n-k} / (k-1).
std::pair<double, double> abel_sum_check_hurwitz(int m, int n, double theta, double lambda);
std::pair<double, double> abel_sum_check_a_variant(int n, int k);

// Borel probabilities grown purely out of the branching fixed point
// Y = 1 + sum_{k<=N} Y_k with Poisson(lambda) N, never from the closed form.
DensePmf enumerate_gw_progeny(double lambda, int n_max);

}  // namespace borel_claims::oracle

#endif
