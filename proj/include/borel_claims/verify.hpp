#ifndef BOREL_CLAIMS_VERIFY_HPP
#define BOREL_CLAIMS_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace borel_claims {

struct CheckResult {
  std::string id;
  bool pass = false;
  bool expected_finding = false;  // reported as an EXPECTED finding, not a failure
  double max_err = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct VerifyOptions {
  bool with_mc = false;
  long mc_samples = 1'000'000;
  std::uint64_t seed = 42;
  // Extra named checks, e.g. "k=-1-counterexample".
  std::vector<std::string> include;
};

// The cross-verification suite: closed forms against the mixing oracle,
// recursion residuals, normalizing-constant route agreement, the shift
// representation, both Panjer engines against the convolution oracle,
// moment routes, the combinatorial identities, deconvolution round trips,
// the numerical-range window, and (optionally) Monte Carlo checks.
std::vector<CheckResult> run_verify(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace borel_claims

#endif
