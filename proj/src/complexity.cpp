#include "rrfilt/complexity.hpp"

#include <stdexcept>

namespace rrfilt {

namespace {

void validateDims(int full_dim, int rank) {
  if (full_dim < 1) throw std::invalid_argument("full_dim must be >= 1");
  if (rank < 1 || rank > full_dim)
    throw std::invalid_argument("need 1 <= rank <= full_dim");
}

}  // namespace

OpCount complexityCount(Algorithm algorithm, int full_dim, int rank) {
  validateDims(full_dim, rank);
  const std::int64_t m = full_dim;
  const std::int64_t d = rank;
  OpCount ops;
  switch (algorithm) {
    case Algorithm::kFullRank:
      ops.additions = 2 * m;
      ops.multiplications = 2 * m + 1;
      break;
    case Algorithm::kJointIterative:
      ops.additions = 2 * d * m + d;
      ops.multiplications = 3 * d * m + d + 2;
      break;
    case Algorithm::kMultistageWiener:
      for (std::int64_t stage = 1; stage <= d; ++stage) {
        const std::int64_t n = m - stage;
        ops.additions += 2 * n * n - 3 * n + 1;
        ops.multiplications += 2 * n * n + 5 * n + 7;
      }
      break;
  }
  return ops;
}

InstrumentedJioResult instrumentedJioStep(const JioState& state,
                                          const ComplexVector& r,
                                          double desired) {
  const Index m = state.S.rows();
  const Index d = state.S.cols();
  if (r.size() != m)
    throw std::invalid_argument("jio: received vector length mismatch");
  if (state.w_bar.size() != d)
    throw std::invalid_argument("jio: filter/projection rank mismatch");

  InstrumentedJioResult result;
  OpCount& ops = result.ops;

  // Projected sample r_bar = S^H r: D inner products of length M.
  ComplexVector r_bar(d);
  for (Index dd = 0; dd < d; ++dd) {
    Complex acc = std::conj(state.S(0, dd)) * r(0);
    ops.multiplications += 1;
    for (Index mm = 1; mm < m; ++mm) {
      acc += std::conj(state.S(mm, dd)) * r(mm);
      ops.multiplications += 1;
      ops.additions += 1;
    }
    r_bar(dd) = acc;
  }

  // Output x = w_bar^H r_bar: one inner product of length D.
  Complex x = std::conj(state.w_bar(0)) * r_bar(0);
  ops.multiplications += 1;
  for (Index dd = 1; dd < d; ++dd) {
    x += std::conj(state.w_bar(dd)) * r_bar(dd);
    ops.multiplications += 1;
    ops.additions += 1;
  }

  const Complex e = Complex(desired, 0.0) - x;
  ops.additions += 1;

  const Complex step_w = state.mu * std::conj(e);
  ops.multiplications += 1;
  const Complex step_s = state.eta * std::conj(e);
  ops.multiplications += 1;

  result.state = state;

  // Reduced weight update: D scaled accumulations, billed as additions
  // (fused multiply-accumulate counted as 1 addition per tap).
  for (Index dd = 0; dd < d; ++dd) {
    result.state.w_bar(dd) = state.w_bar(dd) + step_w * r_bar(dd);
    ops.additions += 1;
  }

  // Projection update from the pre-update weights: the scaled sample entry
  // is evaluated per matrix element (2 multiplications + 1 addition each).
  for (Index dd = 0; dd < d; ++dd) {
    const Complex w_conj = std::conj(state.w_bar(dd));
    for (Index mm = 0; mm < m; ++mm) {
      result.state.S(mm, dd) = state.S(mm, dd) + (step_s * r(mm)) * w_conj;
      ops.multiplications += 2;
      ops.additions += 1;
    }
  }

  result.output = StepOutput{x, e};
  return result;
}

InstrumentedFullRankResult instrumentedFullrankStep(const FullRankState& state,
                                                    const ComplexVector& r,
                                                    double desired) {
  const Index m = state.w.size();
  if (r.size() != m)
    throw std::invalid_argument("lms: received vector length mismatch");

  InstrumentedFullRankResult result;
  OpCount& ops = result.ops;

  Complex x = std::conj(state.w(0)) * r(0);
  ops.multiplications += 1;
  for (Index mm = 1; mm < m; ++mm) {
    x += std::conj(state.w(mm)) * r(mm);
    ops.multiplications += 1;
    ops.additions += 1;
  }

  const Complex e = Complex(desired, 0.0) - x;
  ops.additions += 1;

  const Complex step = state.mu * std::conj(e);
  ops.multiplications += 1;

  result.state = state;
  for (Index mm = 0; mm < m; ++mm) {
    result.state.w(mm) = state.w(mm) + step * r(mm);
    ops.multiplications += 1;
    ops.additions += 1;
  }

  result.output = StepOutput{x, e};
  return result;
}

}  // namespace rrfilt
