#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "plaus/errors.hpp"
#include "plaus/kahan.hpp"
#include "plaus/log_odds.hpp"

using namespace plaus;

TEST_CASE("kahan sum recovers what naive summation loses") {
  // 1 followed by many tiny terms whose total is exactly representable
  KahanSum sum;
  sum.add(1.0);
  for (int i = 0; i < 1000000; ++i) sum.add(1e-16);
  CHECK(sum.value() == doctest::Approx(1.0 + 1e-10).epsilon(1e-14));

  // adding exact zero never moves the accumulator
  KahanSum base;
  base.add(0.125);
  base.add(3.5);
  const double before = base.value();
  base.add(0.0);
  CHECK(base.value() == before);
}

TEST_CASE("log odds states and conversions") {
  const LogOdds even = LogOdds::from_odds(1.0);
  CHECK(even.is_finite());
  CHECK(even.log_value() == 0.0);
  CHECK(even.probability() == doctest::Approx(0.5).epsilon(1e-15));

  const LogOdds seven_thirds = LogOdds::from_odds(7.0 / 3.0);
  CHECK(seven_thirds.probability() == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(seven_thirds.odds() == doctest::Approx(7.0 / 3.0).epsilon(1e-14));

  const LogOdds zero = LogOdds::from_odds(0.0);
  CHECK(zero.is_zero());
  CHECK(zero.odds() == 0.0);
  CHECK(zero.probability() == 0.0);

  const LogOdds infinite = LogOdds::from_odds(std::numeric_limits<double>::infinity());
  CHECK(infinite.is_infinite());
  CHECK(std::isinf(infinite.odds()));
  CHECK(infinite.probability() == 1.0);

  CHECK_THROWS_AS((void)LogOdds::from_odds(-1.0), EvalError);
  CHECK_THROWS_AS((void)LogOdds::from_odds(std::nan("")), EvalError);

  // extreme logs saturate the probability without NaNs
  CHECK(LogOdds::from_log(1000.0).probability() == 1.0);
  CHECK(LogOdds::from_log(-1000.0).probability() == 0.0);
}

TEST_CASE("probability is monotone and inverts p/(1-p)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ps(0.001, 0.999);
  for (int i = 0; i < 2000; ++i) {
    const double p = ps(rng);
    const LogOdds odds = LogOdds::from_odds(p / (1.0 - p));
    CHECK(odds.probability() == doctest::Approx(p).epsilon(1e-12));
  }
  std::uniform_real_distribution<double> logs(-20.0, 20.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = logs(rng);
    const double b = logs(rng);
    if (a == b) continue;
    const LogOdds lo = LogOdds::from_log(std::min(a, b));
    const LogOdds hi = LogOdds::from_log(std::max(a, b));
    CHECK(lo.probability() < hi.probability());
  }
}

TEST_CASE("accumulation propagates conclusive states") {
  const LogOdds two = LogOdds::from_odds(2.0);
  const LogOdds half = LogOdds::from_odds(0.5);

  std::vector<LogOdds> finite{two, half};
  CHECK(accumulate_log_odds(finite).log_value() == doctest::Approx(0.0).epsilon(1e-15));

  std::vector<LogOdds> with_zero{two, LogOdds::conclusive_zero()};
  CHECK(accumulate_log_odds(with_zero).is_zero());

  std::vector<LogOdds> with_inf{LogOdds::conclusive_infinite(), half};
  CHECK(accumulate_log_odds(with_inf).is_infinite());

  std::vector<LogOdds> clash{LogOdds::conclusive_zero(), LogOdds::conclusive_infinite()};
  CHECK_THROWS_WITH_AS((void)accumulate_log_odds(clash),
                       doctest::Contains("CONTRADICTORY_CONCLUSIVES"), EvalError);
}
