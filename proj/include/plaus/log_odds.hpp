#pragma once

#include <span>

namespace plaus {

// Posterior odds in natural-log magnitude form. The zero and infinite states
// are explicit so conclusive evidence never hides behind IEEE infinities; a
// finite LogOdds always carries a finite real.
class LogOdds {
 public:
  enum class State { finite, zero, infinite };

  LogOdds() = default;  // finite, log 0 (even odds)

  // value must be a finite real.
  static LogOdds from_log(double value);

  // odds 0 -> zero state, +inf -> infinite state, positive finite -> finite.
  // Negative or NaN odds raise DOMAIN.
  static LogOdds from_odds(double odds);

  static LogOdds conclusive_zero();
  static LogOdds conclusive_infinite();

  State state() const { return state_; }
  bool is_finite() const { return state_ == State::finite; }
  bool is_zero() const { return state_ == State::zero; }
  bool is_infinite() const { return state_ == State::infinite; }

  // Natural-log odds; only meaningful in the finite state.
  double log_value() const;
  // Base-10 weight-of-evidence display value (finite state).
  double log10_value() const;
  // Raw odds: exp(log) / 0 / +inf. May round to +inf for very large logs.
  double odds() const;
  // p = odds / (1 + odds), computed as a logistic so it saturates cleanly.
  double probability() const;

  bool operator==(const LogOdds&) const = default;

 private:
  State state_ = State::finite;
  double log_ = 0.0;
};

// Log-space combination: compensated sum of the finite terms; zero or
// infinite states absorb. Mixing zero and infinite raises
// CONTRADICTORY_CONCLUSIVES (0 x inf has no value).
LogOdds accumulate_log_odds(std::span<const LogOdds> terms);

}  // namespace plaus
