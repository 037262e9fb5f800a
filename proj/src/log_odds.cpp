#include "plaus/log_odds.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "plaus/errors.hpp"
#include "plaus/kahan.hpp"

namespace plaus {

LogOdds LogOdds::from_log(double value) {
  assert(std::isfinite(value));
  LogOdds lo;
  lo.state_ = State::finite;
  lo.log_ = value;
  return lo;
}

LogOdds LogOdds::from_odds(double odds) {
  if (std::isnan(odds) || odds < 0.0) {
    throw EvalError(err::kDomain, "odds must be >= 0 or infinite, got " + std::to_string(odds));
  }
  if (odds == 0.0) return conclusive_zero();
  if (std::isinf(odds)) return conclusive_infinite();
  return from_log(std::log(odds));
}

LogOdds LogOdds::conclusive_zero() {
  LogOdds lo;
  lo.state_ = State::zero;
  lo.log_ = 0.0;
  return lo;
}

LogOdds LogOdds::conclusive_infinite() {
  LogOdds lo;
  lo.state_ = State::infinite;
  lo.log_ = 0.0;
  return lo;
}

double LogOdds::log_value() const {
  assert(state_ == State::finite);
  return log_;
}

double LogOdds::log10_value() const {
  assert(state_ == State::finite);
  return log_ / std::numbers::ln10_v<double>;
}

double LogOdds::odds() const {
  switch (state_) {
    case State::zero:
      return 0.0;
    case State::infinite:
      return std::numeric_limits<double>::infinity();
    case State::finite:
      return std::exp(log_);
  }
  return 0.0;  // unreachable
}

double LogOdds::probability() const {
  switch (state_) {
    case State::zero:
      return 0.0;
    case State::infinite:
      return 1.0;
    case State::finite:
      // 1/(1 + e^-L): exp saturation gives 0 and 1 at the extremes.
      return 1.0 / (1.0 + std::exp(-log_));
  }
  return 0.0;  // unreachable
}

LogOdds accumulate_log_odds(std::span<const LogOdds> terms) {
  bool saw_zero = false;
  bool saw_infinite = false;
  KahanSum sum;
  for (const LogOdds& t : terms) {
    switch (t.state()) {
      case LogOdds::State::zero:
        saw_zero = true;
        break;
      case LogOdds::State::infinite:
        saw_infinite = true;
        break;
      case LogOdds::State::finite:
        sum.add(t.log_value());
        break;
    }
  }
  if (saw_zero && saw_infinite) {
    throw EvalError(err::kContradictoryConclusives,
                    "a conclusive-zero and a conclusive-infinite contribution meet in one total");
  }
  if (saw_zero) return LogOdds::conclusive_zero();
  if (saw_infinite) return LogOdds::conclusive_infinite();
  return LogOdds::from_log(sum.value());
}

}  // namespace plaus
