#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "borel_claims/panjer.hpp"
#include "borel_claims/simulate.hpp"

using namespace borel_claims;

TEST_SUITE("simulate") {

TEST_CASE("rng determinism and stream splitting") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng base(7);
  Rng s0 = base.stream(0);
  Rng s1 = base.stream(1);
  CHECK(s0.next() != s1.next());
  // Splitting is a pure function of (seed, id).
  Rng again = Rng(7).stream(0);
  Rng s0b = Rng(7).stream(0);
  CHECK(again.next() == s0b.next());
}

TEST_CASE("poisson sampler moments") {
  Rng rng(11);
  CHECK(sample_poisson(rng, 0.0) == 0);
  const long n = 200000;
  for (double mu : {3.0, 50.0}) {  // the second exercises chunking
    double sum = 0.0, sq = 0.0;
    for (long i = 0; i < n; ++i) {
      const double x = static_cast<double>(sample_poisson(rng, mu));
      sum += x;
      sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::fabs(mean - mu) < 5.0 * std::sqrt(mu / n));
    CHECK(std::fabs(var - mu) < 0.05 * mu);
  }
  CHECK_THROWS_AS(sample_poisson(rng, -1.0), std::domain_error);
}

TEST_CASE("geometric sampler") {
  Rng rng(13);
  const long n = 200000;
  long zeros = 0;
  double sum = 0.0;
  for (long i = 0; i < n; ++i) {
    const long x = sample_geometric(rng, 0.5);
    if (x == 0) ++zeros;
    sum += static_cast<double>(x);
  }
  CHECK(std::fabs(static_cast<double>(zeros) / n - 0.5) < 0.005);
  CHECK(std::fabs(sum / n - 1.0) < 0.02);  // mean lambda/(1-lambda) = 1
}

TEST_CASE("borel sampler") {
  {
    Rng rng(17);
    long ones = 0;
    const long n = 100000;
    for (long i = 0; i < n; ++i) {
      if (sample_borel(rng, 1e-6) == 1) ++ones;
    }
    CHECK(static_cast<double>(ones) / n >= 0.9999);
  }
  {
    Rng rng(19);
    const long n = 200000;
    long ones = 0;
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
      const long x = sample_borel(rng, 0.5);
      if (x == 1) ++ones;
      sum += static_cast<double>(x);
    }
    CHECK(std::fabs(static_cast<double>(ones) / n - std::exp(-0.5)) < 0.005);
    CHECK(std::fabs(sum / n - 2.0) < 0.03);
  }
  {
    // lambda = 1 has no mean; a small cap must eventually trip and raise.
    Rng rng(23);
    bool tripped = false;
    for (int i = 0; i < 20000 && !tripped; ++i) {
      try {
        sample_borel(rng, 1.0, 100);
      } catch (const std::runtime_error&) {
        tripped = true;
      }
    }
    CHECK(tripped);
  }
}

TEST_CASE("monte carlo self test") {
  const FamilySpec spec{FamilySpec::Kind::gpd, 1.0, 0.5, 1, 0};
  const LogPmf target = family_pmf_table(spec, 1e-10, std::nullopt);
  const InverseCdfSampler self(target);
  const long n = 200000;
  const SampleStats stats =
      monte_carlo_check(target, [&self](Rng& rng) { return self(rng); }, n, 99);
  const double support = static_cast<double>(target.max_n()) + 1.0;
  CHECK(stats.tv_distance < 3.0 * std::sqrt(support / static_cast<double>(n)));
  long total = stats.overflow + stats.cap_errors;
  for (long c : stats.counts) total += c;
  CHECK(total == n);
  // Reproducibility is bit-exact for a fixed seed.
  const SampleStats again =
      monte_carlo_check(target, [&self](Rng& rng) { return self(rng); }, n, 99);
  CHECK(stats.counts == again.counts);
  CHECK(stats.tv_distance == again.tv_distance);
  CHECK_THROWS_AS(monte_carlo_check(target, [&self](Rng& rng) { return self(rng); }, 100, 1),
                  std::domain_error);
}

TEST_CASE("borel-tanner via two independent draws") {
  const FamilySpec spec{FamilySpec::Kind::borel_tanner, 0.0, 0.5, 2, 0};
  const LogPmf target = family_pmf_table(spec, 1e-10, std::nullopt);
  const auto sampler = [](Rng& rng) {
    return sample_borel(rng, 0.5) + sample_borel(rng, 0.5);
  };
  const SampleStats stats = monte_carlo_check(target, sampler, 200000, 4242);
  CHECK(stats.tv_distance < 0.01);
}

TEST_CASE("family samplers match their closed forms") {
  const std::vector<FamilySpec> specs = {
      {FamilySpec::Kind::gpd, 1.0, 0.5, 1, 0},
      {FamilySpec::Kind::bartlett, 0.0, 0.5, 1, 0},
      {FamilySpec::Kind::delaporte, 1.0, 0.5, 2, 0},
      {FamilySpec::Kind::shifted, 1.0, 0.5, 1, 2},
  };
  std::uint64_t seed = 1000;
  for (const auto& spec : specs) {
    const LogPmf target = family_pmf_table(spec, 1e-10, std::nullopt);
    const FamilySampler sampler(spec);
    const SampleStats stats = monte_carlo_check(
        target, [&sampler](Rng& rng) { return sampler(rng); }, 200000, seed++);
    const double support = static_cast<double>(target.max_n()) + 1.0;
    CHECK(stats.tv_distance < 5.0 * std::sqrt(support / 200000.0));
    CHECK(stats.cap_errors == 0);
    if (spec.kind == FamilySpec::Kind::gpd) {
      // P{Z=0} = e^{-theta}
      const double p0 = static_cast<double>(stats.counts[0]) / 200000.0;
      CHECK(std::fabs(p0 - std::exp(-1.0)) < 0.005);
    }
  }
  CHECK_THROWS_AS(FamilySampler(FamilySpec{FamilySpec::Kind::shifted, 1.0, 0.5, 1, -1}),
                  std::domain_error);
}

TEST_CASE("two-sample chi-square separates and accepts correctly") {
  const FamilySpec spec{FamilySpec::Kind::gpd, 1.0, 0.5, 1, 0};
  const LogPmf target = family_pmf_table(spec, 1e-10, std::nullopt);
  const InverseCdfSampler self(target);
  const auto draw = [&](std::uint64_t seed, const std::function<long(Rng&)>& fn) {
    std::vector<long> counts(static_cast<std::size_t>(target.max_n()) + 2, 0);
    Rng rng(seed);
    for (long i = 0; i < 100000; ++i) {
      const long x = std::min<long>(fn(rng), target.max_n() + 1);
      ++counts[static_cast<std::size_t>(x)];
    }
    return counts;
  };
  const auto a = draw(1, [&](Rng& rng) { return self(rng); });
  const auto b = draw(2, [&](Rng& rng) { return self(rng); });
  CHECK(two_sample_chi_square_pvalue(a, b) > 0.001);
  // A genuinely different law must be rejected hard.
  const FamilySampler bart(FamilySpec{FamilySpec::Kind::bartlett, 1.0, 0.5, 1, 0});
  const auto c = draw(3, [&](Rng& rng) { return bart(rng); });
  CHECK(two_sample_chi_square_pvalue(a, c) < 1e-6);
}

}  // TEST_SUITE
