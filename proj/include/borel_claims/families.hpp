#ifndef BOREL_CLAIMS_FAMILIES_HPP
#define BOREL_CLAIMS_FAMILIES_HPP

#include <optional>
#include <string>
#include <utility>

#include "borel_claims/borel.hpp"
#include "borel_claims/claim_number.hpp"
#include "borel_claims/compounds.hpp"
#include "borel_claims/log_pmf.hpp"

namespace borel_claims {

// One handle for every claim-number law the CLI and the samplers speak
// about: the summand laws (borel, borel-tanner) and the compound laws with
// Borel summands (gpd, bartlett, delaporte, shifted).
struct FamilySpec {
  enum class Kind { borel, borel_tanner, gpd, bartlett, delaporte, shifted };
  Kind kind = Kind::gpd;
  double theta = 1.0;
  double lambda = 0.5;
  int m = 1;  // borel-tanner / delaporte shape
  int k = 0;  // shifted order
};

void validate(const FamilySpec& spec);
FamilySpec::Kind family_kind_from_string(const std::string& name);
std::string to_string(FamilySpec::Kind kind);

// Pointwise log pmf.
double family_log_pmf(const FamilySpec& spec, long n);

// Certified bounds on P{X > n} and E[X 1{X > n}].
TailBounds family_tail_beyond(const FamilySpec& spec, long n);

// Truncated table; fixed support 0..*n_max when given, otherwise the
// smallest support with certified tail mass below eps.
LogPmf family_pmf_table(const FamilySpec& spec, double eps, std::optional<long> n_max);

std::pair<double, double> family_mean_var(const FamilySpec& spec);

}  // namespace borel_claims

#endif
