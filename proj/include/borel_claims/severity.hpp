#ifndef BOREL_CLAIMS_SEVERITY_HPP
#define BOREL_CLAIMS_SEVERITY_HPP

#include <string>
#include <utility>
#include <vector>

namespace borel_claims {

// Discrete claim-size law on {1,...,K}. A mass at zero is structurally
// absent and the weights must already sum to one; unnormalized input is
// rejected, never rescaled silently.
class SeverityPmf {
 public:
  static SeverityPmf unit();  // f(1) = 1
  static SeverityPmf from_pairs(const std::vector<std::pair<long, double>>& pairs);
  // One "size probability" pair per line, '#' starts a comment.
  static SeverityPmf from_file(const std::string& path);

  long max_claim() const { return static_cast<long>(f_.size()) - 1; }
  double at(long k) const {
    return (k >= 1 && k < static_cast<long>(f_.size())) ? f_[static_cast<std::size_t>(k)] : 0.0;
  }
  double mean() const;
  double variance() const;

 private:
  explicit SeverityPmf(std::vector<double> f) : f_(std::move(f)) {}
  std::vector<double> f_;  // index = claim size; f_[0] stays zero
};

}  // namespace borel_claims

#endif
