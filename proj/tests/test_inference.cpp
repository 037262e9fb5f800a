#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "plaus/errors.hpp"
#include "plaus/inference.hpp"
#include "plaus/kahan.hpp"
#include "plaus/oracle.hpp"
#include "plaus/validate.hpp"
#include "testutil.hpp"

using namespace plaus;
namespace tu = plaus::testutil;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;
constexpr double kLn5 = 1.6094379124341003;
constexpr double kLn6 = 1.791759469228055;
constexpr double kLn15 = 2.70805020110221;
}  // namespace

TEST_CASE("coverage-discounted log likelihood ratios") {
  CHECK(group_effective_log_lr(tu::group_with_lr("g", 5.0, 1.0)).log_value() ==
        doctest::Approx(kLn5).epsilon(1e-14));
  CHECK(group_effective_log_lr(tu::group_with_lr("g", 4.0, 0.5)).log_value() ==
        doctest::Approx(kLn2).epsilon(1e-14));
  CHECK(group_effective_log_lr(tu::group_with_lr("g", 1.0, 0.3)).log_value() == 0.0);

  CHECK(group_effective_log_lr(tu::group_with_lr("g", 0.0, 1.0)).is_zero());
  CHECK(group_effective_log_lr(tu::group_with_lr("g", kInf, 1.0)).is_infinite());
  CHECK_THROWS_WITH_AS((void)group_effective_log_lr(tu::group_with_lr("g", 0.0, 0.5)),
                       doctest::Contains("NONFINITE_WITH_COVERAGE"), EvalError);
  CHECK_THROWS_WITH_AS((void)group_effective_log_lr(tu::group_with_lr("g", kInf, 0.9)),
                       doctest::Contains("NONFINITE_WITH_COVERAGE"), EvalError);
}

TEST_CASE("coverage bound: |c ln lr| <= |ln lr|, equality only at c = 1") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lrs(1e-3, 1e3);
  std::uniform_real_distribution<double> cs(0.01, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double lr = lrs(rng);
    const double c = cs(rng);
    const double effective = group_effective_log_lr(tu::group_with_lr("g", lr, c)).log_value();
    const double raw = std::log(lr);
    CHECK(std::abs(effective) <= std::abs(raw) + 1e-15);
    if (c < 1.0 && lr != 1.0) CHECK(std::abs(effective) < std::abs(raw));
  }
}

TEST_CASE("occam net factor is the complexity ratio") {
  CHECK(occam_net_log_factor(1.0, 15.0).log_value() == doctest::Approx(kLn15).epsilon(1e-14));
  CHECK(occam_net_log_factor(1.0, 1.0).log_value() == 0.0);
  CHECK(occam_net_log_factor(3.0, 6.0).log_value() == doctest::Approx(kLn2).epsilon(1e-14));
  // penalising the claimant divides the odds
  CHECK(occam_net_log_factor(15.0, 1.0).log_value() ==
        doctest::Approx(-kLn15).epsilon(1e-14));
}

TEST_CASE("occam scale invariance: only the ratio matters") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> complexities(1.0, 50.0);
  std::uniform_real_distribution<double> scales(1.0, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = complexities(rng);
    const double b = complexities(rng);
    const double k = scales(rng);
    CHECK(occam_net_log_factor(a, b).log_value() ==
          doctest::Approx(occam_net_log_factor(k * a, k * b).log_value()).epsilon(1e-12));
  }
}

TEST_CASE("posterior log odds of a claim") {
  // equally probable evidence, complexity 15 on the opposing account: odds 15
  Claim occam = tu::claim_with_groups(
      "c", {tu::group_with_lr("g1", 1.0), tu::group_with_lr("g2", 1.0)}, 1.0, 1.0, 15.0);
  const LogOdds total = claim_posterior_log_odds(occam);
  CHECK(total.log_value() == doctest::Approx(kLn15).epsilon(1e-12));
  CHECK(total.odds() == doctest::Approx(15.0).epsilon(1e-9));

  // no evidence at all: posterior equals the (even) prior
  CHECK(claim_posterior_log_odds(tu::claim_with_groups("c", {})).log_value() == 0.0);

  // two independent groups multiply
  Claim pair = tu::claim_with_groups("c", {tu::group_with_lr("g1", 2.0),
                                           tu::group_with_lr("g2", 3.0)});
  CHECK(claim_posterior_log_odds(pair).log_value() == doctest::Approx(kLn6).epsilon(1e-12));
}

TEST_CASE("two-group claim agrees with the enumeration oracle") {
  // independent two-variable world with per-variable LRs 2 and 3
  DiscreteWorld world;
  world.world_id = "pair";
  world.variables = {{"V1", {"obs", "alt"}}, {"V2", {"obs", "alt"}}};
  // P: marginals .6/.4 and .6/.4 ; D: .3/.7 and .2/.8  ->  LRs 2 and 3
  world.mass_p = {0.36, 0.24, 0.24, 0.16};
  world.mass_d = {0.06, 0.24, 0.14, 0.56};
  world.observed = {{"V1", "obs"}, {"V2", "obs"}};
  REQUIRE(validate_world(world).empty());

  const std::vector<std::string> v1{"V1"};
  const std::vector<std::string> v2{"V2"};
  const std::vector<std::string> both{"V1", "V2"};
  CHECK(oracle_lr(world, v1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(oracle_lr(world, v2) == doctest::Approx(3.0).epsilon(1e-12));
  const double joint = oracle_lr(world, both);
  CHECK(joint == doctest::Approx(6.0).epsilon(1e-12));

  Claim pair = tu::claim_with_groups("c", {tu::group_with_lr("g1", 2.0),
                                           tu::group_with_lr("g2", 3.0)});
  CHECK(claim_posterior_log_odds(pair).log_value() ==
        doctest::Approx(std::log(joint)).epsilon(1e-12));
}

TEST_CASE("conclusive states propagate and clash loudly") {
  Claim zero_prior = tu::claim_with_groups("c", {tu::group_with_lr("g", 5.0)}, 0.0);
  CHECK(claim_posterior_log_odds(zero_prior).is_zero());

  Claim proof = tu::claim_with_groups("c", {tu::group_with_lr("g", kInf)});
  CHECK(claim_posterior_log_odds(proof).is_infinite());

  Claim clash = tu::claim_with_groups(
      "c", {tu::group_with_lr("g1", 0.0), tu::group_with_lr("g2", kInf)});
  CHECK_THROWS_WITH_AS((void)claim_posterior_log_odds(clash),
                       doctest::Contains("CONTRADICTORY_CONCLUSIVES"), EvalError);
}

TEST_CASE("combined case odds multiply the claims") {
  const double seven_thirds = 7.0 / 3.0;
  CaseSpec conjunction = tu::case_with_claims(
      "conj", {tu::claim_with_groups("c1", {tu::group_with_lr("g1", seven_thirds)}),
               tu::claim_with_groups("c2", {tu::group_with_lr("g2", seven_thirds)})});
  const CaseOdds odds = case_combined_log_odds(conjunction);
  REQUIRE(odds.per_claim.size() == 2);
  CHECK(odds.per_claim[0].second.odds() == doctest::Approx(seven_thirds).epsilon(1e-12));
  CHECK(odds.combined.odds() == doctest::Approx(49.0 / 9.0).epsilon(1e-12));

  CaseSpec single = tu::case_with_claims(
      "single", {tu::claim_with_groups("c1", {tu::group_with_lr("g1", 4.0)})});
  const CaseOdds one = case_combined_log_odds(single);
  CHECK(one.combined == one.per_claim[0].second);

  CaseSpec reciprocal = tu::case_with_claims(
      "recip", {tu::claim_with_groups("c1", {tu::group_with_lr("g1", 0.5)}),
                tu::claim_with_groups("c2", {tu::group_with_lr("g2", 2.0)})});
  CHECK(case_combined_log_odds(reciprocal).combined.odds() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("probability from odds") {
  CHECK(probability_from_odds(LogOdds::from_odds(7.0 / 3.0)) ==
        doctest::Approx(0.7).epsilon(1e-13));
  CHECK(probability_from_odds(LogOdds::from_odds(1.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(probability_from_odds(LogOdds::conclusive_zero()) == 0.0);
  CHECK(probability_from_odds(LogOdds::conclusive_infinite()) == 1.0);
}

TEST_CASE("standards gate on strict comparison") {
  const StandardOfProof preponderance{StandardKind::preponderance, "preponderance", 1.0};
  const StandardOfProof brd{StandardKind::beyond_reasonable_doubt, "beyond_reasonable_doubt",
                            99.0};
  CHECK(apply_standard(LogOdds::from_odds(49.0 / 9.0), preponderance) == Finding::met);
  CHECK(apply_standard(LogOdds::from_odds(1.0), preponderance) == Finding::not_met);  // ties fail
  CHECK(apply_standard(LogOdds::from_odds(15.0), brd) == Finding::not_met);
  CHECK(apply_standard(LogOdds::conclusive_zero(), preponderance) == Finding::not_met);
  CHECK(apply_standard(LogOdds::conclusive_infinite(), brd) == Finding::met);
}

TEST_CASE("explain: contributions sum to the totals exactly") {
  // the Occam-only case: one occam factor ln 15, zero group contribution
  CaseSpec occam = tu::case_with_claims(
      "occam", {tu::claim_with_groups("c1", {tu::group_with_lr("g1", 1.0)}, 1.0, 1.0, 15.0)});
  const ContributionReport report = explain(occam);
  REQUIRE(report.claims.size() == 1);
  CHECK(report.claims[0].occam_log_factor == doctest::Approx(kLn15).epsilon(1e-14));
  CHECK(report.claims[0].groups[0].effective_log_lr.log_value() == 0.0);
  CHECK(report.claims[0].total.log_value() == doctest::Approx(kLn15).epsilon(1e-12));

  // bookkeeping identity on random cases: redoing the stored sum reproduces
  // the stored total bit for bit, and explain() agrees with the claim op
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const CaseSpec spec = tu::random_case(rng);
    const ContributionReport r = explain(spec);
    for (std::size_t c = 0; c < spec.claims.size(); ++c) {
      const ClaimContribution& claim = r.claims[c];
      std::vector<LogOdds> terms;
      terms.push_back(claim.prior_log_odds);
      for (const GroupContribution& g : claim.groups) terms.push_back(g.effective_log_lr);
      terms.push_back(LogOdds::from_log(claim.occam_log_factor));
      CHECK(accumulate_log_odds(terms) == claim.total);
      CHECK(claim_posterior_log_odds(spec.claims[c]) == claim.total);
    }
  }
}

TEST_CASE("explain: conjunction reporting") {
  const double seven_thirds = 7.0 / 3.0;
  CaseSpec conjunction = tu::case_with_claims(
      "conj", {tu::claim_with_groups("c1", {tu::group_with_lr("g1", seven_thirds)}),
               tu::claim_with_groups("c2", {tu::group_with_lr("g2", seven_thirds)})});
  const ContributionReport report = explain(conjunction);
  CHECK(report.claims[0].total.log_value() ==
        doctest::Approx(std::log(seven_thirds)).epsilon(1e-13));
  CHECK(report.combined.log_value() ==
        doctest::Approx(2.0 * std::log(seven_thirds)).epsilon(1e-13));
  CHECK(report.naive_joint_probability == doctest::Approx(0.49).epsilon(1e-13));
}

TEST_CASE("path independence under permutation") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const CaseSpec spec = tu::random_case(rng);
    const ContributionReport base = explain(spec);
    CaseSpec shuffled = spec;
    std::shuffle(shuffled.claims.begin(), shuffled.claims.end(), rng);
    for (Claim& claim : shuffled.claims) {
      std::shuffle(claim.groups.begin(), claim.groups.end(), rng);
    }
    const ContributionReport moved = explain(shuffled);
    for (const ClaimContribution& claim : moved.claims) {
      const auto it = std::find_if(base.claims.begin(), base.claims.end(),
                                   [&](const ClaimContribution& c) {
                                     return c.claim_id == claim.claim_id;
                                   });
      REQUIRE(it != base.claims.end());
      CHECK(std::abs(claim.total.log_value() - it->total.log_value()) <= 1e-12);
    }
    CHECK(std::abs(moved.combined.log_value() - base.combined.log_value()) <= 1e-12);
  }
}

TEST_CASE("qualitative correspondence on appended evidence") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> lrs(1.0 + 1e-6, 1e3);
  std::uniform_real_distribution<double> cs(0.05, 1.0);  // any c > 0 keeps the direction
  for (int i = 0; i < 200; ++i) {
    CaseSpec spec = tu::case_with_claims(
        "q", {tu::claim_with_groups("c1", {tu::group_with_lr("g1", lrs(rng))})});
    const double before = claim_posterior_log_odds(spec.claims[0]).log_value();

    Claim with_neutral = spec.claims[0];
    with_neutral.groups.push_back(tu::group_with_lr("gn", 1.0, cs(rng)));
    CHECK(claim_posterior_log_odds(with_neutral).log_value() == before);  // exact

    Claim with_support = spec.claims[0];
    with_support.groups.push_back(tu::group_with_lr("gs", lrs(rng), cs(rng)));
    CHECK(claim_posterior_log_odds(with_support).log_value() > before);

    Claim with_counter = spec.claims[0];
    with_counter.groups.push_back(tu::group_with_lr("gc", 1.0 / lrs(rng), cs(rng)));
    CHECK(claim_posterior_log_odds(with_counter).log_value() < before);
  }
}

TEST_CASE("sweep substitutes one parameter at a time") {
  const StandardOfProof preponderance{StandardKind::preponderance, "preponderance", 1.0};
  CaseSpec spec = tu::case_with_claims(
      "sweep", {tu::claim_with_groups("c1", {tu::group_with_lr("g1", 9.0)})});

  SUBCASE("identity substitution reproduces the base evaluation") {
    const std::vector<double> values{1.0};
    const SweepTable table = sweep(spec, "c1.g1.coverage", values, preponderance);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].per_claim[0].second == claim_posterior_log_odds(spec.claims[0]));
  }

  SUBCASE("coverage sweep on lr 9: odds 9, 3, 9^0.1") {
    const std::vector<double> values{1.0, 0.5, 0.1};
    const SweepTable table = sweep(spec, "c1.g1.coverage", values, preponderance);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].per_claim[0].second.odds() == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(table.rows[1].per_claim[0].second.odds() ==
          doctest::Approx(std::pow(9.0, 0.5)).epsilon(1e-12));
    CHECK(table.rows[2].per_claim[0].second.odds() ==
          doctest::Approx(std::pow(9.0, 0.1)).epsilon(1e-12));
    CHECK(table.rows[1].per_claim[0].second.odds() == doctest::Approx(3.0).epsilon(1e-12));
  }

  SUBCASE("lr sweep is strictly monotone") {
    const std::vector<double> values{0.5, 1.0, 2.0, 4.0, 8.0};
    const SweepTable table = sweep(spec, "c1.g1.lr", values, preponderance);
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
      CHECK(table.rows[i].per_claim[0].second.log_value() >
            table.rows[i - 1].per_claim[0].second.log_value());
    }
  }

  SUBCASE("prior and complexity targets resolve") {
    const std::vector<double> values{2.0};
    CHECK(sweep(spec, "c1.prior", values, preponderance).rows[0].per_claim[0].second.odds() ==
          doctest::Approx(18.0).epsilon(1e-12));
    CHECK(sweep(spec, "c1.against.complexity", values, preponderance)
              .rows[0]
              .per_claim[0]
              .second.odds() == doctest::Approx(18.0).epsilon(1e-12));
    CHECK(sweep(spec, "c1.for.complexity", values, preponderance)
              .rows[0]
              .per_claim[0]
              .second.odds() == doctest::Approx(4.5).epsilon(1e-12));
  }

  SUBCASE("unknown targets and domain violations") {
    const std::vector<double> ok{1.0};
    CHECK_THROWS_WITH_AS((void)sweep(spec, "c1.g9.lr", ok, preponderance),
                         doctest::Contains("UNKNOWN_TARGET"), EvalError);
    CHECK_THROWS_WITH_AS((void)sweep(spec, "nope", ok, preponderance),
                         doctest::Contains("UNKNOWN_TARGET"), EvalError);
    const std::vector<double> bad{2.0};
    CHECK_THROWS_WITH_AS((void)sweep(spec, "c1.g1.coverage", bad, preponderance),
                         doctest::Contains("DOMAIN"), EvalError);
    const std::vector<double> negative{-1.0};
    CHECK_THROWS_WITH_AS((void)sweep(spec, "c1.g1.lr", negative, preponderance),
                         doctest::Contains("DOMAIN"), EvalError);
  }
}
