#pragma once

#include <stdexcept>
#include <string>

namespace rrfilt {

/// A Hermitian solve hit a pivot below the conditioning floor (or the
/// factorization failed outright). Carries the offending pivot magnitude.
class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(const std::string& what, double pivot_magnitude)
      : std::runtime_error(what + " (pivot magnitude " +
                           std::to_string(pivot_magnitude) + ")"),
        pivot_magnitude_(pivot_magnitude) {}

  double pivotMagnitude() const { return pivot_magnitude_; }

 private:
  double pivot_magnitude_;
};

/// Orthonormalization had nothing left to keep: every column deflated to zero.
class DegenerateBasisError : public std::runtime_error {
 public:
  explicit DegenerateBasisError(const std::string& what)
      : std::runtime_error(what) {}
};

/// An adaptive step produced a non-finite state. Carries the symbol index at
/// which the filter blew up (-1 when the caller did not supply one).
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, long step_index)
      : std::runtime_error(what + " at step " + std::to_string(step_index)),
        step_index_(step_index) {}

  long stepIndex() const { return step_index_; }

 private:
  long step_index_;
};

}  // namespace rrfilt
