#pragma once

#include "rrfilt/filters.hpp"
#include "rrfilt/types.hpp"

#include <cstdint>

namespace rrfilt {

/// Exact complex-operation counts for one adaptation step.
struct OpCount {
  std::int64_t additions = 0;
  std::int64_t multiplications = 0;

  friend bool operator==(const OpCount&, const OpCount&) = default;
};

enum class Algorithm { kFullRank, kJointIterative, kMultistageWiener };

/// Per-symbol operation counts under the library's counting convention
/// (documented below and executed literally by the instrumented steps):
///
///   * A length-n complex inner product costs n multiplications and n - 1
///     additions; forming the error from the output adds 1 addition.
///   * Scaling the error by a step size costs 1 multiplication per distinct
///     step size.
///   * The full-rank weight update w += (mu e*) r costs M multiplications
///     and M additions (one multiply-accumulate per tap, billed as 1
///     multiplication + 1 addition).
///   * The projection update S += (eta e*) r w_bar^H evaluates the scaled
///     sample entry per matrix element, costing 2 multiplications and 1
///     addition per element (D M elements).
///   * The reduced weight update w_bar += (mu e*) r_bar is billed as D
///     scaled accumulations (1 addition per tap); its multiply is fused
///     into the accumulation and not counted separately. This asymmetry
///     with the full-rank row is part of the convention and is what the
///     instrumented step counts.
///
/// Totals: full-rank (2M additions, 2M + 1 multiplications); joint
/// iterative (2DM + D additions, 3DM + D + 2 multiplications); multistage
/// Wiener accumulates per-stage costs (2n^2 - 3n + 1 additions,
/// 2n^2 + 5n + 7 multiplications) over stages d = 1..D with n = M - d.
OpCount complexityCount(Algorithm algorithm, int full_dim, int rank);

struct InstrumentedJioResult {
  StepOutput output;
  JioState state;
  OpCount ops;
};

struct InstrumentedFullRankResult {
  StepOutput output;
  FullRankState state;
  OpCount ops;
};

/// Scalar-loop implementations of the adaptation steps that increment
/// operation counters exactly per the documented convention. Numerical
/// results agree with jioLmsStep / fullrankLmsStep.
InstrumentedJioResult instrumentedJioStep(const JioState& state,
                                          const ComplexVector& r,
                                          double desired);

InstrumentedFullRankResult instrumentedFullrankStep(const FullRankState& state,
                                                    const ComplexVector& r,
                                                    double desired);

}  // namespace rrfilt
