#include "borel_claims/panjer.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace borel_claims {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::size_t grid_budget_entries() {
  // BOREL_CLAIMS_MAX_GRID caps grid memory in bytes (default 512 MiB).
  std::size_t bytes = std::size_t{512} << 20;
  if (const char* env = std::getenv("BOREL_CLAIMS_MAX_GRID")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw std::domain_error("BOREL_CLAIMS_MAX_GRID must be a positive byte count");
    }
    bytes = static_cast<std::size_t>(v);
  }
  return bytes / sizeof(double);
}

FamilySpec count_spec(const PanjerFamily& family, double theta, double lambda) {
  FamilySpec spec;
  spec.theta = theta;
  spec.lambda = lambda;
  switch (family.tag) {
    case PanjerFamily::Tag::gpd:
      spec.kind = FamilySpec::Kind::gpd;
      break;
    case PanjerFamily::Tag::bartlett:
      spec.kind = FamilySpec::Kind::bartlett;
      break;
    case PanjerFamily::Tag::shifted:
      spec.kind = FamilySpec::Kind::shifted;
      spec.k = family.k;
      break;
  }
  return spec;
}

// Tail of the aggregate law beyond n_max: condition on the claim count,
//   P{T > N} = sum_m p_Z(m) (1 - F^{*m}(N)) + P{Z > M},
// where F^{*m} are exact severity convolution CDFs (zero beyond m > N since
// the severity lives on positive integers). Only the count remainder is a
// bound, so the result tracks the true tail closely.
TailBounds aggregate_tail(const FamilySpec& count, const SeverityPmf& severity, long n_max) {
  const double mu_u = severity.mean();
  const std::size_t width = static_cast<std::size_t>(n_max) + 1;
  std::vector<double> power(width, 0.0);
  power[0] = 1.0;  // severity^{*0}
  double mass = 0.0;
  double mean = 0.0;
  const long max_k = severity.max_claim();
  for (long m = 0; m <= n_max; ++m) {
    const double w = std::exp(family_log_pmf(count, m));
    if (w > 0.0 && m > 0) {
      double cdf = 0.0;
      double partial_mean = 0.0;
      for (long n = 0; n <= n_max; ++n) {
        cdf += power[static_cast<std::size_t>(n)];
        partial_mean += static_cast<double>(n) * power[static_cast<std::size_t>(n)];
      }
      mass += w * std::max(0.0, 1.0 - cdf);
      mean += w * std::max(0.0, static_cast<double>(m) * mu_u - partial_mean);
    }
    // power <- power * f, truncated to 0..n_max
    std::vector<double> next(width, 0.0);
    for (long n = static_cast<long>(n_max); n >= 0; --n) {
      double s = 0.0;
      for (long k = 1; k <= std::min<long>(max_k, n); ++k) {
        s += power[static_cast<std::size_t>(n - k)] * severity.at(k);
      }
      next[static_cast<std::size_t>(n)] = s;
    }
    power.swap(next);
  }
  const TailBounds count_tail = family_tail_beyond(count, n_max);
  mass += count_tail.mass;
  mean += mu_u * count_tail.mean;
  // Floating-point slack of the cancellations 1 - F^{*m}(N).
  mass += static_cast<double>(n_max + 1) * 1e-15;
  mean += static_cast<double>(n_max + 1) * mu_u * 1e-13;
  return {mass, mean};
}

}  // namespace

RecursionGrid::RecursionGrid(long n_max) : n_max_(n_max) {
  if (n_max < 0) throw std::domain_error("RecursionGrid: n_max must be >= 0");
  const std::size_t entries =
      static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(n_max + 2) / 2;
  if (entries > grid_budget_entries()) {
    throw std::runtime_error(
        "RecursionGrid: triangular grid exceeds the memory budget (raise BOREL_CLAIMS_MAX_GRID)");
  }
  log_v_.assign(entries, kNegInf);
}

std::size_t RecursionGrid::index(long j, long n) const {
  if (j < 0 || n < 0 || j + n > n_max_) {
    throw std::out_of_range("RecursionGrid: access outside the computed triangle (j=" +
                            std::to_string(j) + ", n=" + std::to_string(n) + ")");
  }
  // Rows by n: row n holds j = 0..n_max-n.
  const std::size_t nn = static_cast<std::size_t>(n);
  const std::size_t total = static_cast<std::size_t>(n_max_) + 1;
  // offset of row n: sum_{t<n} (n_max - t + 1) = n*(total) - n(n-1)/2
  const std::size_t row = nn * total - nn * (nn - 1) / 2;
  return row + static_cast<std::size_t>(j);
}

double RecursionGrid::at(long j, long n) const { return log_v_[index(j, n)]; }

void RecursionGrid::set(long j, long n, double log_value) { log_v_[index(j, n)] = log_value; }

LogPmf aggregate_pmf(const PanjerFamily& family, const SeverityPmf& severity, double theta,
                     double lambda, long n_max) {
  const FamilySpec count = count_spec(family, theta, lambda);
  validate(count);
  if (n_max < 0) throw std::domain_error("aggregate_pmf: n_max must be >= 0");

  // Shift-level data: theta_j = theta + j*lambda for j = 0..n_max (+1 for
  // the shifted family's coefficient ratio).
  std::vector<double> log_base(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> coeff_a(static_cast<std::size_t>(n_max) + 1, 0.0);
  std::vector<double> coeff_b(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (family.tag == PanjerFamily::Tag::shifted) {
    SCache cache;
    std::vector<double> s(static_cast<std::size_t>(n_max) + 2);
    for (long j = 0; j <= n_max + 1; ++j) {
      s[static_cast<std::size_t>(j)] = s_constant(family.k, theta + j * lambda, lambda, &cache);
    }
    for (long j = 0; j <= n_max; ++j) {
      const double theta_j = theta + j * lambda;
      const double c = s[static_cast<std::size_t>(j + 1)] / s[static_cast<std::size_t>(j)];
      coeff_a[static_cast<std::size_t>(j)] = c * lambda;
      coeff_b[static_cast<std::size_t>(j)] = c * theta_j;
      log_base[static_cast<std::size_t>(j)] =
          shifted_mixture_pmf(ShiftedMixtureParams{family.k, theta_j, lambda}, 0,
                              std::log(s[static_cast<std::size_t>(j)]))
              .log_value();
    }
  } else {
    for (long j = 0; j <= n_max; ++j) {
      const double theta_j = theta + j * lambda;
      if (family.tag == PanjerFamily::Tag::gpd) {
        const double denom = theta_j + lambda;
        coeff_a[static_cast<std::size_t>(j)] = denom > 0.0 ? theta_j * lambda / denom : 0.0;
        coeff_b[static_cast<std::size_t>(j)] = denom > 0.0 ? theta_j * theta_j / denom : 0.0;
        log_base[static_cast<std::size_t>(j)] = -theta_j;
      } else {
        coeff_a[static_cast<std::size_t>(j)] = lambda;
        coeff_b[static_cast<std::size_t>(j)] = theta_j;
        log_base[static_cast<std::size_t>(j)] = std::log1p(-lambda) - theta_j;
      }
    }
  }

  RecursionGrid grid(n_max);
  for (long j = 0; j <= n_max; ++j) grid.set(j, 0, log_base[static_cast<std::size_t>(j)]);
  const long max_k = severity.max_claim();
  std::vector<double> terms;
  for (long n = 1; n <= n_max; ++n) {
    for (long j = 0; j + n <= n_max; ++j) {
      const double a = coeff_a[static_cast<std::size_t>(j)];
      const double b = coeff_b[static_cast<std::size_t>(j)];
      terms.clear();
      for (long k = 1; k <= std::min<long>(max_k, n); ++k) {
        const double f = severity.at(k);
        if (f == 0.0) continue;
        const double c = a + b * static_cast<double>(k) / static_cast<double>(n);
        if (c == 0.0) continue;
        terms.push_back(std::log(c) + std::log(f) + grid.at(j + 1, n - k));
      }
      grid.set(j, n, log_sum_exp(std::span<const double>(terms)));
    }
  }

  LogPmf out;
  out.log_probs.resize(static_cast<std::size_t>(n_max) + 1);
  for (long n = 0; n <= n_max; ++n) out.log_probs[static_cast<std::size_t>(n)] = grid.at(0, n);
  if (count.lambda < 1.0) {
    const TailBounds tail = aggregate_tail(count, severity, n_max);
    out.tail_mass_bound = tail.mass;
    out.tail_mean_bound = tail.mean;
  } else {
    out.tail_mass_bound = std::numeric_limits<double>::infinity();
    out.tail_mean_bound = std::numeric_limits<double>::infinity();
  }
  return out;
}

namespace {

// Pyramid over (shift j, shape offset i <= j, mass n) with j + n <= n_max.
class DelaporteGrid {
 public:
  explicit DelaporteGrid(long n_max) : n_max_(n_max) {
    std::size_t entries = 0;
    for (long n = 0; n <= n_max; ++n) {
      const std::size_t rows = static_cast<std::size_t>(n_max - n) + 1;
      row_offset_.push_back(entries);
      entries += rows * (rows + 1) / 2;
    }
    if (entries > grid_budget_entries()) {
      throw std::runtime_error(
          "aggregate_pmf_delaporte: pyramid exceeds the memory budget (raise BOREL_CLAIMS_MAX_GRID)");
    }
    log_v_.assign(entries, kNegInf);
  }

  double at(long j, long i, long n) const { return log_v_[index(j, i, n)]; }
  void set(long j, long i, long n, double v) { log_v_[index(j, i, n)] = v; }

 private:
  std::size_t index(long j, long i, long n) const {
    if (n < 0 || j < 0 || i < 0 || i > j || j + n > n_max_) {
      throw std::out_of_range("aggregate_pmf_delaporte: access outside the computed pyramid");
    }
    return row_offset_[static_cast<std::size_t>(n)] +
           static_cast<std::size_t>(j) * static_cast<std::size_t>(j + 1) / 2 +
           static_cast<std::size_t>(i);
  }

  long n_max_;
  std::vector<std::size_t> row_offset_;
  std::vector<double> log_v_;
};

}  // namespace

LogPmf aggregate_pmf_delaporte(const SeverityPmf& severity, double theta, double lambda, int m,
                               long n_max, bool literal_b1) {
  FamilySpec count;
  count.kind = FamilySpec::Kind::delaporte;
  count.theta = theta;
  count.lambda = lambda;
  count.m = m;
  validate(count);
  if (n_max < 0) throw std::domain_error("aggregate_pmf_delaporte: n_max must be >= 0");

  DelaporteGrid grid(n_max);
  const double log_one_minus = std::log1p(-lambda);
  for (long n0_j = 0; n0_j <= n_max; ++n0_j) {
    for (long i = 0; i <= n0_j; ++i) {
      grid.set(n0_j, i, 0, (m + i) * log_one_minus - (theta + n0_j * lambda));
    }
  }
  const long max_k = severity.max_claim();
  std::vector<double> terms;
  for (long n = 1; n <= n_max; ++n) {
    for (long j = 0; j + n <= n_max; ++j) {
      const double theta_j = theta + j * lambda;
      for (long i = 0; i <= j; ++i) {
        const double shape = static_cast<double>(m + i);
        const double b_raise = (shape - 1.0) * lambda / (1.0 - lambda);
        terms.clear();
        for (long k = 1; k <= std::min<long>(max_k, n); ++k) {
          const double f = severity.at(k);
          if (f == 0.0) continue;
          const double kn = static_cast<double>(k) / static_cast<double>(n);
          const double log_f = std::log(f);
          // same-shape branch
          const double c_same =
              literal_b1 ? (theta_j + lambda * static_cast<double>(n)) * kn : lambda + theta_j * kn;
          if (c_same > 0.0) {
            terms.push_back(std::log(c_same) + log_f + grid.at(j + 1, i, n - k));
          }
          // shape-raising branch
          const double c_raise = b_raise * kn;
          if (c_raise > 0.0) {
            terms.push_back(std::log(c_raise) + log_f + grid.at(j + 1, i + 1, n - k));
          }
        }
        grid.set(j, i, n, log_sum_exp(std::span<const double>(terms)));
      }
    }
  }

  LogPmf out;
  out.log_probs.resize(static_cast<std::size_t>(n_max) + 1);
  for (long n = 0; n <= n_max; ++n) out.log_probs[static_cast<std::size_t>(n)] = grid.at(0, 0, n);
  const TailBounds tail = aggregate_tail(count, severity, n_max);
  out.tail_mass_bound = tail.mass;
  out.tail_mean_bound = tail.mean;
  return out;
}

std::pair<double, double> panjer_coefficients(const PanjerFamily& family, double theta,
                                              double lambda) {
  switch (family.tag) {
    case PanjerFamily::Tag::gpd: {
      const double denom = theta + lambda;
      if (denom == 0.0) return {0.0, 0.0};
      return {theta * lambda / denom, theta * theta / denom};
    }
    case PanjerFamily::Tag::bartlett:
      return {lambda, theta};
    case PanjerFamily::Tag::shifted: {
      const double c =
          s_constant(family.k, theta + lambda, lambda) / s_constant(family.k, theta, lambda);
      return {c * lambda, c * theta};
    }
  }
  throw std::logic_error("panjer_coefficients: unknown family");
}

std::pair<double, double> aggregate_mean_var(const FamilySpec& count, const SeverityPmf& severity) {
  const auto [mz, vz] = family_mean_var(count);
  const double mu = severity.mean();
  const double vu = severity.variance();
  return {mz * mu, mz * vu + vz * mu * mu};
}

long default_aggregate_support(const FamilySpec& count, const SeverityPmf& severity) {
  const auto [mean, var] = aggregate_mean_var(count, severity);
  return std::max<long>(16, static_cast<long>(std::ceil(mean + 10.0 * std::sqrt(var))));
}

StopLossResult stop_loss(const LogPmf& q, long d, double max_tail_bound) {
  if (d < 0) throw std::domain_error("stop_loss: retention d must be >= 0");
  double value = 0.0;
  for (long n = q.max_n(); n > d; --n) {
    value += static_cast<double>(n - d) * q.prob(n);
  }
  const double bound = q.tail_mean_bound;
  if (!(bound <= max_tail_bound)) {
    throw std::runtime_error("stop_loss: certified tail bound " + std::to_string(bound) +
                             " exceeds the requested accuracy");
  }
  return {value, bound};
}

}  // namespace borel_claims
