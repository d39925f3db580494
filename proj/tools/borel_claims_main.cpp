// Batch front end: pmf tables, moments, normalizing constants, aggregate
// claims, Monte Carlo runs, and the cross-verification suite. Output is a
// pure function of the flags (seed included); CSV carries 17 significant
// digits so runs can be reproduced and diffed across languages.

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "borel_claims/compounds.hpp"
#include "borel_claims/families.hpp"
#include "borel_claims/panjer.hpp"
#include "borel_claims/simulate.hpp"
#include "borel_claims/verify.hpp"

namespace {

using borel_claims::FamilySpec;
using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct CommonOpts {
  std::string family;
  double theta = 1.0;
  double lambda = 0.5;
  int m = 1;
  int k = 0;
  std::string format = "csv";
};

FamilySpec to_spec(const CommonOpts& o) {
  FamilySpec spec;
  spec.kind = borel_claims::family_kind_from_string(o.family);
  spec.theta = o.theta;
  spec.lambda = o.lambda;
  spec.m = o.m;
  spec.k = o.k;
  borel_claims::validate(spec);
  return spec;
}

void add_family_flags(CLI::App* cmd, CommonOpts* o, bool with_format = true) {
  cmd->add_option("--family", o->family, "borel|borel-tanner|gpd|bartlett|delaporte|shifted")
      ->required();
  cmd->add_option("--theta", o->theta, "Poisson rate of the count layer");
  cmd->add_option("--lambda", o->lambda, "Borel / geometric parameter");
  cmd->add_option("--m", o->m, "shape (borel-tanner initial claims, delaporte shape)");
  cmd->add_option("--k", o->k, "shift order of the shifted family");
  if (with_format) {
    cmd->add_option("--format", o->format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
  }
}

json pmf_rows_json(const borel_claims::LogPmf& pmf) {
  json rows = json::array();
  double cumulative = 0.0;
  for (long n = 0; n <= pmf.max_n(); ++n) {
    const double p = pmf.prob(n);
    cumulative += p;
    rows.push_back({{"n", n},
                    {"probability", p},
                    {"log_probability", pmf.log_at(n)},
                    {"cumulative", cumulative}});
  }
  return rows;
}

void print_pmf_csv(const borel_claims::LogPmf& pmf) {
  std::printf("n,probability,log_probability,cumulative\n");
  double cumulative = 0.0;
  for (long n = 0; n <= pmf.max_n(); ++n) {
    const double p = pmf.prob(n);
    cumulative += p;
    std::printf("%ld,%s,%s,%s\n", n, fmt17(p).c_str(), fmt17(pmf.log_at(n)).c_str(),
                fmt17(cumulative).c_str());
  }
  std::printf("# tail_mass_bound = %s\n", fmt17(pmf.tail_mass_bound).c_str());
}

int cmd_pmf(const CommonOpts& o, std::optional<long> n_max, double tol) {
  const FamilySpec spec = to_spec(o);
  const borel_claims::LogPmf pmf = borel_claims::family_pmf_table(spec, tol, n_max);
  if (o.format == "json") {
    json out{{"family", o.family},
             {"theta", spec.theta},
             {"lambda", spec.lambda},
             {"m", spec.m},
             {"k", spec.k},
             {"rows", pmf_rows_json(pmf)},
             {"tail_mass_bound", pmf.tail_mass_bound}};
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    print_pmf_csv(pmf);
  }
  return 0;
}

int cmd_moments(const CommonOpts& o, int order) {
  const FamilySpec spec = to_spec(o);
  const auto [mean, var] = borel_claims::family_mean_var(spec);
  std::vector<double> raw;
  const bool representable = spec.kind == FamilySpec::Kind::gpd ||
                             spec.kind == FamilySpec::Kind::bartlett ||
                             spec.kind == FamilySpec::Kind::shifted;
  if (order > 2 && !representable) {
    throw std::domain_error("moments: raw moments beyond order 2 are only available for "
                            "gpd/bartlett/shifted families");
  }
  if (representable) {
    int k = spec.k;
    if (spec.kind == FamilySpec::Kind::gpd) k = 0;
    if (spec.kind == FamilySpec::Kind::bartlett) k = 1;
    borel_claims::SCache cache;
    const borel_claims::ShiftedMixtureParams p{k, spec.theta, spec.lambda};
    for (int j = 1; j <= order; ++j) {
      raw.push_back(borel_claims::mixture_moment(p, j, borel_claims::MomentMethod::lemma, &cache));
    }
  }
  if (o.format == "json") {
    json out{{"family", o.family}, {"theta", spec.theta}, {"lambda", spec.lambda},
             {"m", spec.m},        {"k", spec.k},         {"mean", mean},
             {"variance", var}};
    if (!raw.empty()) out["raw_moments"] = raw;
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("statistic,value\n");
    std::printf("mean,%s\n", fmt17(mean).c_str());
    std::printf("variance,%s\n", fmt17(var).c_str());
    for (std::size_t j = 0; j < raw.size(); ++j) {
      std::printf("moment_%zu,%s\n", j + 1, fmt17(raw[j]).c_str());
    }
  }
  return 0;
}

int cmd_sconst(int k, double theta, double lambda, const std::string& method,
               const std::string& format) {
  std::vector<std::pair<std::string, double>> values;
  const auto run = [&](const std::string& name, borel_claims::SMethod m) {
    values.emplace_back(name, borel_claims::s_constant(k, theta, lambda, m));
  };
  if (method == "series" || method == "all") run("series", borel_claims::SMethod::series);
  if (method == "recursion" || method == "all") run("recursion", borel_claims::SMethod::recursion);
  if ((method == "closed" || (method == "all" && k >= 1))) run("closed", borel_claims::SMethod::closed);
  if (format == "json") {
    json out{{"k", k}, {"theta", theta}, {"lambda", lambda}};
    for (const auto& [name, v] : values) out[name] = v;
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("method,value\n");
    for (const auto& [name, v] : values) std::printf("%s,%s\n", name.c_str(), fmt17(v).c_str());
  }
  return 0;
}

int cmd_aggregate(const CommonOpts& o, const std::string& severity_path, std::optional<long> n_max,
                  long retention, std::optional<double> stop_loss_tol) {
  const FamilySpec spec = to_spec(o);
  if (spec.kind == FamilySpec::Kind::borel || spec.kind == FamilySpec::Kind::borel_tanner) {
    throw std::domain_error("aggregate: the count family must be gpd|bartlett|delaporte|shifted");
  }
  const borel_claims::SeverityPmf severity = borel_claims::SeverityPmf::from_file(severity_path);
  const long support = n_max.value_or(borel_claims::default_aggregate_support(spec, severity));
  borel_claims::LogPmf q;
  if (spec.kind == FamilySpec::Kind::delaporte) {
    q = borel_claims::aggregate_pmf_delaporte(severity, spec.theta, spec.lambda, spec.m, support);
  } else {
    borel_claims::PanjerFamily family = borel_claims::PanjerFamily::gpd();
    if (spec.kind == FamilySpec::Kind::bartlett) family = borel_claims::PanjerFamily::bartlett();
    if (spec.kind == FamilySpec::Kind::shifted) family = borel_claims::PanjerFamily::shifted(spec.k);
    q = borel_claims::aggregate_pmf(family, severity, spec.theta, spec.lambda, support);
  }
  const auto [mean, var] = borel_claims::aggregate_mean_var(spec, severity);
  const auto sl = borel_claims::stop_loss(
      q, retention, stop_loss_tol.value_or(std::numeric_limits<double>::infinity()));
  if (o.format == "json") {
    json out{{"family", o.family},
             {"theta", spec.theta},
             {"lambda", spec.lambda},
             {"m", spec.m},
             {"k", spec.k},
             {"severity", severity_path},
             {"n_max", support},
             {"rows", pmf_rows_json(q)},
             {"tail_mass_bound", q.tail_mass_bound},
             {"summary",
              {{"mean", mean},
               {"variance", var},
               {"stop_loss_d", retention},
               {"stop_loss", sl.value},
               {"stop_loss_tail_bound", sl.tail_bound}}}};
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    print_pmf_csv(q);
    std::printf("# mean = %s\n", fmt17(mean).c_str());
    std::printf("# variance = %s\n", fmt17(var).c_str());
    std::printf("# stop_loss(d=%ld) = %s\n", retention, fmt17(sl.value).c_str());
    std::printf("# stop_loss_tail_bound = %s\n", fmt17(sl.tail_bound).c_str());
  }
  return 0;
}

int cmd_simulate(const CommonOpts& o, long samples, std::uint64_t seed, std::optional<long> n_max,
                 double tol) {
  const FamilySpec spec = to_spec(o);
  const borel_claims::LogPmf target = borel_claims::family_pmf_table(spec, tol, n_max);
  const borel_claims::FamilySampler sampler(spec);
  const borel_claims::SampleStats stats = borel_claims::monte_carlo_check(
      target, [&sampler](borel_claims::Rng& rng) { return sampler(rng); }, samples, seed);
  json out{{"family", o.family},
           {"theta", spec.theta},
           {"lambda", spec.lambda},
           {"m", spec.m},
           {"k", spec.k},
           {"seed", stats.seed},
           {"n_samples", stats.n_samples},
           {"support_max", target.max_n()},
           {"target_tail_mass_bound", target.tail_mass_bound},
           {"frequencies", stats.counts},
           {"overflow", stats.overflow},
           {"cap_errors", stats.cap_errors},
           {"tv_distance", stats.tv_distance},
           {"max_abs_dev", stats.max_abs_dev},
           {"max_z", stats.max_z}};
  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}

int cmd_verify(bool with_mc, long samples, std::uint64_t seed,
               const std::vector<std::string>& include) {
  borel_claims::VerifyOptions options;
  options.with_mc = with_mc;
  options.mc_samples = samples;
  options.seed = seed;
  options.include = include;
  const auto results = borel_claims::run_verify(options);
  json checks = json::array();
  bool failed = false;
  for (const auto& r : results) {
    checks.push_back({{"id", r.id},
                      {"pass", r.pass},
                      {"expected_finding", r.expected_finding},
                      {"max_err", r.max_err},
                      {"detail", r.detail}});
    if (!r.pass) failed = true;
  }
  json out{{"checks", checks}, {"all_pass", !failed}};
  std::printf("%s\n", out.dump(2).c_str());
  if (failed) {
    for (const auto& r : results) {
      if (!r.pass) std::fprintf(stderr, "invariant failure: %s\n", r.id.c_str());
    }
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compound claim-number distributions with Borel summands"};
  app.require_subcommand(1);

  CommonOpts pmf_opts, mom_opts, agg_opts, sim_opts;
  std::optional<long> pmf_n, agg_n, sim_n;
  double pmf_tol = 1e-12, sim_tol = 1e-10;
  int mom_order = 2;

  int sk = 0;
  double s_theta = 1.0, s_lambda = 0.5;
  std::string s_method = "all", s_format = "csv";

  std::string severity_path;
  long retention = 0;
  std::optional<double> stop_loss_tol;

  long sim_samples = 1000000;
  std::uint64_t sim_seed = 42;

  bool verify_mc = false;
  long verify_samples = 1000000;
  std::uint64_t verify_seed = 42;
  std::vector<std::string> verify_include;

  auto* pmf = app.add_subcommand("pmf", "evaluate a pmf table");
  add_family_flags(pmf, &pmf_opts);
  pmf->add_option("--n,--N", pmf_n, "largest mass point (default: certified tail below --tol)");
  pmf->add_option("--tol", pmf_tol, "tail-mass epsilon for the default truncation");

  auto* mom = app.add_subcommand("moments", "closed-form moments");
  add_family_flags(mom, &mom_opts);
  mom->add_option("--order", mom_order, "highest raw moment (gpd/bartlett/shifted)");

  auto* sc = app.add_subcommand("sconst", "normalizing constants S(k,theta,lambda)");
  sc->add_option("--k", sk, "shift order")->required();
  sc->add_option("--theta", s_theta, "theta");
  sc->add_option("--lambda", s_lambda, "lambda");
  sc->add_option("--method", s_method, "series|recursion|closed|all")
      ->check(CLI::IsMember({"series", "recursion", "closed", "all"}));
  sc->add_option("--format", s_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* agg = app.add_subcommand("aggregate", "aggregate-claim distribution");
  add_family_flags(agg, &agg_opts);
  agg->add_option("--severity", severity_path, "severity file (size probability per line)")
      ->required();
  agg->add_option("--n,--N", agg_n, "largest aggregate mass point (default: mean + 10 stddev)");
  agg->add_option("--d", retention, "stop-loss retention for the summary");
  agg->add_option("--stop-loss-tol", stop_loss_tol,
                  "error out if the stop-loss tail bound exceeds this");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo check of a sampler");
  add_family_flags(sim, &sim_opts, false);
  sim->add_option("--samples", sim_samples, "number of draws (>= 10^4)");
  sim->add_option("--seed", sim_seed, "64-bit stream seed");
  sim->add_option("--n,--N", sim_n, "target support cap");
  sim->add_option("--tol", sim_tol, "target truncation epsilon");

  auto* ver = app.add_subcommand("verify", "run the cross-verification suite");
  ver->add_flag("--mc", verify_mc, "include Monte Carlo checks");
  ver->add_option("--samples", verify_samples, "Monte Carlo sample count");
  ver->add_option("--seed", verify_seed, "Monte Carlo seed");
  ver->add_option("--include", verify_include, "extra checks (e.g. k=-1-counterexample)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (pmf->parsed()) return cmd_pmf(pmf_opts, pmf_n, pmf_tol);
    if (mom->parsed()) return cmd_moments(mom_opts, mom_order);
    if (sc->parsed()) return cmd_sconst(sk, s_theta, s_lambda, s_method, s_format);
    if (agg->parsed()) {
      return cmd_aggregate(agg_opts, severity_path, agg_n, retention, stop_loss_tol);
    }
    if (sim->parsed()) return cmd_simulate(sim_opts, sim_samples, sim_seed, sim_n, sim_tol);
    if (ver->parsed()) return cmd_verify(verify_mc, verify_samples, verify_seed, verify_include);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
