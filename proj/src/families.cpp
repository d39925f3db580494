#include "borel_claims/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace borel_claims {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// The shifted family recovers the GPD at k = 0 and the compound Bartlett law
// at k = 1 (S(0) = 1/theta, S(1) = 1/(1-lambda)); dispatching those orders to
// the direct evaluations keeps the identity exact to the last bit.
FamilySpec canonical(FamilySpec spec) {
  if (spec.kind == FamilySpec::Kind::shifted && (spec.k == 0 || spec.k == 1)) {
    validate(ShiftedMixtureParams{spec.k, spec.theta, spec.lambda});
    spec.kind = spec.k == 0 ? FamilySpec::Kind::gpd : FamilySpec::Kind::bartlett;
  }
  return spec;
}

}  // namespace

void validate(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilySpec::Kind::borel:
      validate(BorelParams{spec.lambda});
      return;
    case FamilySpec::Kind::borel_tanner:
      validate(BorelTannerParams{spec.lambda, spec.m});
      return;
    case FamilySpec::Kind::gpd:
      validate(GpdParams{spec.theta, spec.lambda});
      return;
    case FamilySpec::Kind::bartlett:
      bartlett_compound_pmf(spec.theta, spec.lambda, 0);
      return;
    case FamilySpec::Kind::delaporte:
      if (spec.m < 2) {
        throw std::domain_error("delaporte family: m must be >= 2 (m = 1 is the bartlett family)");
      }
      validate(DelaporteParams{spec.theta, spec.lambda, spec.m});
      return;
    case FamilySpec::Kind::shifted:
      validate(ShiftedMixtureParams{spec.k, spec.theta, spec.lambda});
      return;
  }
  throw std::logic_error("unknown family kind");
}

FamilySpec::Kind family_kind_from_string(const std::string& name) {
  if (name == "borel") return FamilySpec::Kind::borel;
  if (name == "borel-tanner") return FamilySpec::Kind::borel_tanner;
  if (name == "gpd") return FamilySpec::Kind::gpd;
  if (name == "bartlett") return FamilySpec::Kind::bartlett;
  if (name == "delaporte") return FamilySpec::Kind::delaporte;
  if (name == "shifted") return FamilySpec::Kind::shifted;
  throw std::domain_error("unknown family '" + name +
                          "' (expected borel|borel-tanner|gpd|bartlett|delaporte|shifted)");
}

std::string to_string(FamilySpec::Kind kind) {
  switch (kind) {
    case FamilySpec::Kind::borel: return "borel";
    case FamilySpec::Kind::borel_tanner: return "borel-tanner";
    case FamilySpec::Kind::gpd: return "gpd";
    case FamilySpec::Kind::bartlett: return "bartlett";
    case FamilySpec::Kind::delaporte: return "delaporte";
    case FamilySpec::Kind::shifted: return "shifted";
  }
  return "?";
}

double family_log_pmf(const FamilySpec& spec_in, long n) {
  const FamilySpec spec = canonical(spec_in);
  switch (spec.kind) {
    case FamilySpec::Kind::borel:
      return borel_pmf(BorelParams{spec.lambda}, n).log_value();
    case FamilySpec::Kind::borel_tanner:
      return borel_tanner_pmf(BorelTannerParams{spec.lambda, spec.m}, n).log_value();
    case FamilySpec::Kind::gpd:
      return gpd_pmf(GpdParams{spec.theta, spec.lambda}, n).log_value();
    case FamilySpec::Kind::bartlett:
      return bartlett_compound_pmf(spec.theta, spec.lambda, n).log_value();
    case FamilySpec::Kind::delaporte:
      return delaporte_compound_pmf(DelaporteParams{spec.theta, spec.lambda, spec.m}, n).log_value();
    case FamilySpec::Kind::shifted:
      return shifted_mixture_pmf(ShiftedMixtureParams{spec.k, spec.theta, spec.lambda}, n).log_value();
  }
  throw std::logic_error("unknown family kind");
}

namespace {

void require_certifiable(const FamilySpec& spec) {
  if (spec.lambda >= 1.0) {
    throw std::domain_error("tail bounds are not available at lambda = 1 (no geometric decay)");
  }
}

// Certified tail of the compound Delaporte law: condition on the claim
// count C ~ Delaporte(theta,lambda,m); given C = j the total is
// Borel-Tanner(lambda, j), so
//   P{Z > N} = sum_j P{C=j} P{BT_j > N}
// with the j-sum cut at J and the remainder bounded through the Poisson and
// negative-binomial components of C. The m-fold-convolution union bound is
// far too loose at lambda near 1.
TailBounds delaporte_tail_certificate(const DelaporteParams& p, long n) {
  const double lambda = p.lambda;
  const double mu_y = 1.0 / (1.0 - lambda);

  // Component cut points: Poisson(theta) beyond j1 and NegBin(lambda,m)
  // beyond j2 both certified below the floor.
  const double floor_eps = 1e-18;
  long j1 = static_cast<long>(std::ceil(p.theta)) + 1;
  double pois_mass = 0.0, pois_mean = 0.0;
  for (;; ++j1) {
    const double r = detail::poisson_ratio_bound(p.theta, j1);
    if (r >= 0.999) continue;
    const double t = p.theta > 0.0
                         ? std::exp(j1 * std::log(p.theta) - p.theta - log_factorial(j1))
                         : (j1 == 0 ? 1.0 : 0.0);
    pois_mass = detail::geometric_tail_mass(t, r);
    pois_mean = detail::geometric_tail_first_moment(j1, t, r);
    if (pois_mass < floor_eps) break;
  }
  long j2 = 1;
  double nb_mass = 0.0, nb_mean = 0.0;
  for (;; ++j2) {
    const double r = detail::negbin_ratio_bound(lambda, p.m, j2);
    if (r >= 0.999) continue;
    const double t = std::exp(log_binomial(j2 + p.m - 1, j2).log_value() +
                              j2 * std::log(lambda) + p.m * std::log1p(-lambda));
    nb_mass = detail::geometric_tail_mass(t, r);
    nb_mean = detail::geometric_tail_first_moment(j2, t, r);
    if (nb_mass < floor_eps) break;
  }
  const long cut = j1 + j2;

  double mass = 0.0;
  double mean = 0.0;
  for (long j = 1; j <= cut; ++j) {
    const double w = std::exp(delaporte_pmf(p, j).log_value());
    if (w == 0.0) continue;
    double bt_mass = 1.0;
    double bt_mean = static_cast<double>(j) * mu_y;
    if (j <= n) {
      const double r = detail::borel_tanner_ratio_bound(lambda, static_cast<int>(j), n);
      if (r < 0.999) {
        const double t = std::exp(
            borel_tanner_pmf(BorelTannerParams{lambda, static_cast<int>(j)}, n).log_value());
        bt_mass = std::min(1.0, detail::geometric_tail_mass(t, r));
        bt_mean = std::min(bt_mean, detail::geometric_tail_first_moment(n, t, r));
      }
    }
    mass += w * bt_mass;
    mean += w * bt_mean;
  }
  // Count remainder: P{C > cut} and E[C 1{C > cut}] through the components.
  const double count_tail = pois_mass + nb_mass;
  const double pois_mu = p.theta;
  const double nb_mu = p.m * lambda / (1.0 - lambda);
  const double count_mean_tail = pois_mean + nb_mu * pois_mass + pois_mu * nb_mass + nb_mean;
  mass += count_tail;
  mean += mu_y * count_mean_tail;
  return {mass, mean};
}

// Sharpens the certificate by summing exact pmf values past n until the
// certified remainder is a small fraction of the whole; the reported bound
// then tracks the true tail within ~0.1%.
TailBounds delaporte_tail_beyond(const DelaporteParams& p, long n) {
  double partial_mass = 0.0;
  double partial_mean = 0.0;
  long frontier = n;
  for (int round = 0; round < 200; ++round) {
    const TailBounds cert = delaporte_tail_certificate(p, frontier);
    if (cert.mass <= 1e-3 * (partial_mass + cert.mass) || cert.mass <= 1e-12) {
      return {partial_mass + cert.mass, partial_mean + cert.mean};
    }
    for (long step = 0; step < 256; ++step) {
      ++frontier;
      const double t = std::exp(delaporte_compound_pmf(p, frontier).log_value());
      partial_mass += t;
      partial_mean += static_cast<double>(frontier) * t;
    }
  }
  const TailBounds cert = delaporte_tail_certificate(p, frontier);
  return {partial_mass + cert.mass, partial_mean + cert.mean};
}

RatioBound family_ratio_bound(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilySpec::Kind::borel:
      return [l = spec.lambda](long n) { return detail::power_series_ratio_bound(0.0, l, -1.0, n); };
    case FamilySpec::Kind::borel_tanner:
      return [l = spec.lambda, m = spec.m](long n) { return detail::borel_tanner_ratio_bound(l, m, n); };
    case FamilySpec::Kind::gpd:
      if (spec.lambda == 0.0) {
        return [t = spec.theta](long n) { return detail::poisson_ratio_bound(t, n); };
      }
      return [s = spec](long n) { return detail::power_series_ratio_bound(s.theta, s.lambda, -1.0, n); };
    case FamilySpec::Kind::bartlett:
      return [s = spec](long n) { return detail::power_series_ratio_bound(s.theta, s.lambda, 0.0, n); };
    case FamilySpec::Kind::shifted:
      return [s = spec](long n) {
        return detail::power_series_ratio_bound(s.theta, s.lambda, static_cast<double>(s.k) - 1.0, n);
      };
    case FamilySpec::Kind::delaporte:
      break;  // handled by the mixture bound
  }
  throw std::logic_error("no ratio bound for this family");
}

}  // namespace

TailBounds family_tail_beyond(const FamilySpec& spec_in, long n) {
  validate(spec_in);
  const FamilySpec spec = canonical(spec_in);
  require_certifiable(spec);
  if (spec.kind == FamilySpec::Kind::gpd && spec.theta == 0.0) return {0.0, 0.0};
  if (spec.kind == FamilySpec::Kind::delaporte) {
    return delaporte_tail_beyond(DelaporteParams{spec.theta, spec.lambda, spec.m}, n);
  }
  const auto eval = [spec](long j) { return family_log_pmf(spec, j); };
  return tail_beyond(eval, family_ratio_bound(spec), n);
}

LogPmf family_pmf_table(const FamilySpec& spec_in, double eps, std::optional<long> n_max) {
  validate(spec_in);
  const FamilySpec spec = canonical(spec_in);
  require_certifiable(spec);
  // Shifted laws resolve the normalizing constant once for the whole table.
  LogEval eval;
  if (spec.kind == FamilySpec::Kind::shifted) {
    const double log_s = std::log(s_constant(spec.k, spec.theta, spec.lambda));
    eval = [s = spec, log_s](long n) {
      return shifted_mixture_pmf(ShiftedMixtureParams{s.k, s.theta, s.lambda}, n, log_s).log_value();
    };
  } else {
    eval = [spec](long n) { return family_log_pmf(spec, n); };
  }

  if (spec.kind == FamilySpec::Kind::delaporte) {
    const DelaporteParams params{spec.theta, spec.lambda, spec.m};
    long top;
    if (n_max) {
      top = *n_max;
    } else {
      // Coarse search with the one-shot certificate (an upper bound on the
      // refined one), starting from the moment-based estimate.
      const auto [mean, var] = family_mean_var(spec);
      top = std::max<long>(8, static_cast<long>(std::ceil(mean + 10.0 * std::sqrt(var))));
      while (delaporte_tail_certificate(params, top).mass >= eps) {
        top *= 2;
        if (top > (1 << 20)) {
          throw std::runtime_error("family_pmf_table: tail bound did not reach eps within the cap");
        }
      }
      long lo = top / 2;  // smallest top with certified mass < eps
      while (lo < top) {
        const long mid = lo + (top - lo) / 2;
        if (delaporte_tail_certificate(params, mid).mass < eps) {
          top = mid;
        } else {
          lo = mid + 1;
        }
      }
    }
    LogPmf pmf;
    pmf.log_probs.resize(static_cast<std::size_t>(top) + 1);
    for (long n = 0; n <= top; ++n) pmf.log_probs[static_cast<std::size_t>(n)] = eval(n);
    const TailBounds tail = delaporte_tail_beyond(params, top);
    pmf.tail_mass_bound = tail.mass;
    pmf.tail_mean_bound = tail.mean;
    return pmf;
  }

  if (spec.kind == FamilySpec::Kind::gpd && spec.theta == 0.0) {
    LogPmf pmf;
    const long top = n_max.value_or(0);
    pmf.log_probs.assign(static_cast<std::size_t>(top) + 1, kNegInf);
    pmf.log_probs[0] = 0.0;
    return pmf;
  }

  const RatioBound ratio = family_ratio_bound(spec);
  if (n_max) return build_log_pmf_fixed(eval, ratio, *n_max);
  return build_log_pmf(eval, ratio, eps);
}

std::pair<double, double> family_mean_var(const FamilySpec& spec_in) {
  validate(spec_in);
  const FamilySpec spec = canonical(spec_in);
  if (spec.lambda >= 1.0) {
    throw std::domain_error("moments do not exist at lambda = 1");
  }
  const double q = 1.0 - spec.lambda;
  switch (spec.kind) {
    case FamilySpec::Kind::borel:
      return borel_mean_var(BorelParams{spec.lambda});
    case FamilySpec::Kind::borel_tanner:
      return borel_tanner_mean_var(BorelTannerParams{spec.lambda, spec.m});
    case FamilySpec::Kind::gpd:
      return {spec.theta / q, spec.theta / (q * q * q)};
    case FamilySpec::Kind::bartlett:
      return {spec.theta / q + spec.lambda / (q * q),
              spec.theta / (q * q * q) + (spec.lambda * spec.lambda + spec.lambda) / (q * q * q * q)};
    case FamilySpec::Kind::delaporte:
      return {spec.theta / q + spec.m * spec.lambda / (q * q),
              spec.theta / (q * q * q) +
                  spec.m * (spec.lambda * spec.lambda + spec.lambda) / (q * q * q * q)};
    case FamilySpec::Kind::shifted:
      return mixture_mean_var(ShiftedMixtureParams{spec.k, spec.theta, spec.lambda});
  }
  throw std::logic_error("unknown family kind");
}

}  // namespace borel_claims
