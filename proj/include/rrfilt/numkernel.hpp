#pragma once

#include "rrfilt/errors.hpp"
#include "rrfilt/types.hpp"

namespace rrfilt {

/// Second-order statistics of a (received vector, desired symbol) stream:
/// R = E[r r^H], p = E[d* r], sigma_d_sq = E[|d|^2].
struct MomentSet {
  ComplexMatrix R;
  ComplexVector p;
  double sigma_d_sq = 0.0;
  long sample_count = 0;
};

/// Pivot floor below which Hermitian solves refuse to proceed. Callers that
/// want to solve anyway must diagonally load before calling.
inline constexpr double kPivotFloor = 1e-12;

/// Columns whose norm falls below this after deflation are dropped.
inline constexpr double kDeflationFloor = 1e-10;

/// Solves A x = b for Hermitian positive-definite A via an LDL^H
/// factorization followed by one step of iterative refinement, so that
/// ||A x - b|| <= 1e-10 (1 + ||b||) on every successful return.
/// Throws IllConditionedError when a pivot falls below kPivotFloor, when A is
/// numerically indefinite, or when the refined residual misses the bound.
ComplexVector hermitianSolve(const ComplexMatrix& A, const ComplexVector& b);

/// Plain arithmetic averaging of r r^H, d* r and |d|^2 over a sample stream.
/// The accumulated R is Hermitian by construction (only one triangle is
/// touched; the mirror is taken on readout).
class MomentAccumulator {
 public:
  explicit MomentAccumulator(Index dim);

  void add(const ComplexVector& r, Complex d);
  long sampleCount() const { return count_; }
  Index dim() const { return sum_rr_.rows(); }

  /// Throws std::invalid_argument("no samples") when nothing was added.
  MomentSet moments() const;

 private:
  ComplexMatrix sum_rr_;  // lower triangle only
  ComplexVector sum_dr_;
  double sum_dd_ = 0.0;
  long count_ = 0;
};

/// Batch form: samples holds one received vector per column, desired holds
/// the matching desired symbols.
MomentSet estimateMoments(const ComplexMatrix& samples,
                          const ComplexVector& desired);

/// Modified Gram-Schmidt with re-orthogonalization. Columns that deflate
/// below kDeflationFloor are dropped, so the result may have fewer columns
/// than the input; the column span is preserved. Throws DegenerateBasisError
/// when every column deflates away.
ComplexMatrix orthonormalizeColumns(const ComplexMatrix& B);

}  // namespace rrfilt
