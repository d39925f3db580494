#include "borel_claims/severity.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace borel_claims {

SeverityPmf SeverityPmf::unit() { return from_pairs({{1, 1.0}}); }

SeverityPmf SeverityPmf::from_pairs(const std::vector<std::pair<long, double>>& pairs) {
  long max_k = 0;
  for (const auto& [k, p] : pairs) {
    if (k < 1) throw std::domain_error("severity: claim sizes must be positive integers (P{U=0}=0)");
    max_k = std::max(max_k, k);
  }
  if (max_k == 0) throw std::domain_error("severity: at least one claim size is required");
  std::vector<double> f(static_cast<std::size_t>(max_k) + 1, 0.0);
  for (const auto& [k, p] : pairs) {
    if (f[static_cast<std::size_t>(k)] != 0.0) {
      throw std::domain_error("severity: duplicate claim size " + std::to_string(k));
    }
    if (!(p >= 0.0)) throw std::domain_error("severity: probabilities must be >= 0");
    f[static_cast<std::size_t>(k)] = p;
  }
  double sum = 0.0;
  for (std::size_t k = 1; k < f.size(); ++k) sum += f[k];
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw std::domain_error("severity: probabilities must sum to 1 within 1e-12 (got " +
                            std::to_string(sum) + "); unnormalized input is rejected");
  }
  return SeverityPmf(std::move(f));
}

SeverityPmf SeverityPmf::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("severity: cannot open '" + path + "'");
  std::vector<std::pair<long, double>> pairs;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    long k;
    double p;
    if (!(ss >> k)) {
      std::string leftover;
      if (ss.clear(), ss >> leftover) {
        throw std::runtime_error("severity: " + path + ":" + std::to_string(line_no) +
                                 ": expected 'size probability'");
      }
      continue;  // blank or comment-only line
    }
    if (!(ss >> p)) {
      throw std::runtime_error("severity: " + path + ":" + std::to_string(line_no) +
                               ": missing probability");
    }
    std::string extra;
    if (ss >> extra) {
      throw std::runtime_error("severity: " + path + ":" + std::to_string(line_no) +
                               ": trailing content '" + extra + "'");
    }
    if (k < 1) {
      throw std::runtime_error("severity: " + path + ":" + std::to_string(line_no) +
                               ": claim sizes must be positive integers (P{U=0}=0)");
    }
    pairs.emplace_back(k, p);
  }
  if (pairs.empty()) throw std::runtime_error("severity: " + path + ": no entries");
  try {
    return from_pairs(pairs);
  } catch (const std::domain_error& e) {
    throw std::runtime_error("severity: " + path + ": " + e.what());
  }
}

double SeverityPmf::mean() const {
  double s = 0.0;
  for (std::size_t k = 1; k < f_.size(); ++k) s += static_cast<double>(k) * f_[k];
  return s;
}

double SeverityPmf::variance() const {
  const double m = mean();
  double s = 0.0;
  for (std::size_t k = 1; k < f_.size(); ++k) {
    s += (static_cast<double>(k) - m) * (static_cast<double>(k) - m) * f_[k];
  }
  return s;
}

}  // namespace borel_claims
