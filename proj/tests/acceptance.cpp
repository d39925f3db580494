// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion aggregates the relevant checks of the shared
// verification suite and enforces its runtime budget.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "borel_claims/verify.hpp"

namespace {

struct Criterion {
  std::string label;
  std::vector<std::string> prefixes;  // check ids (prefix match for mc-*)
  double budget_seconds = 0.0;        // 0 = no budget
};

bool id_matches(const std::string& id, const std::string& prefix) {
  return id.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace

int main() {
  borel_claims::VerifyOptions options;
  options.with_mc = true;
  options.mc_samples = 1'000'000;
  options.seed = 42;
  options.include = {"k=-1-counterexample"};
  const auto results = borel_claims::run_verify(options);

  const std::vector<Criterion> criteria = {
      {"criterion 1 closed-form pmfs vs mixing oracle (rel 1e-9, n<=30)",
       {"pmf-vs-mixing-oracle"},
       10.0},
      {"criterion 2 recursion residuals (rel 1e-12, n<=100)", {"recursion-residuals"}, 5.0},
      {"criterion 3 S-constant route agreement and worked values",
       {"s-constant-triple-agreement", "s-constant-worked-values"},
       0.0},
      {"criterion 4 shift-representation exact check (k=1..3, rel 1e-9)",
       {"shift-representation"},
       0.0},
      {"criterion 5 Panjer engines vs convolution oracle + unit severity",
       {"panjer-oracle", "panjer-unit-severity"},
       30.0},
      {"criterion 6 moment routes and closed-form moments",
       {"moment-route-agreement", "moment-closed-forms"},
       0.0},
      {"criterion 7 combinatorial identities, branching DP, convolution powers",
       {"identity-multinomial", "identity-abel-sums", "gw-progeny-dp",
        "borel-tanner-convolution"},
       60.0},
      {"criterion 8 negative-k counterexample and deconvolution round trip",
       {"k=-1-counterexample", "deconvolve-roundtrip"},
       0.0},
      {"criterion 9 Monte Carlo TV and seed determinism (10^6 draws)", {"mc-"}, 180.0},
      {"criterion 10 numerical range to n=2000 at lambda=0.9", {"numeric-range"}, 0.0},
  };

  bool all_pass = true;
  for (const auto& criterion : criteria) {
    bool pass = true;
    bool found = false;
    double seconds = 0.0;
    double max_err = 0.0;
    std::string first_failure;
    for (const auto& r : results) {
      bool matched = false;
      for (const auto& prefix : criterion.prefixes) {
        if (id_matches(r.id, prefix)) matched = true;
      }
      if (!matched) continue;
      found = true;
      seconds += r.seconds;
      if (r.max_err > max_err) max_err = r.max_err;
      if (!r.pass) {
        pass = false;
        if (first_failure.empty()) first_failure = r.id + ": " + r.detail;
      }
    }
    if (!found) {
      pass = false;
      first_failure = "no matching checks ran";
    }
    if (criterion.budget_seconds > 0.0 && seconds > criterion.budget_seconds) {
      pass = false;
      first_failure = "runtime budget exceeded";
    }
    std::printf("%s: %s  [%.2fs]%s%s\n", pass ? "PASS" : "FAIL", criterion.label.c_str(), seconds,
                first_failure.empty() ? "" : "  ", first_failure.c_str());
    all_pass = all_pass && pass;
  }
  std::printf("%s\n", all_pass ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES");
  return all_pass ? 0 : 1;
}
