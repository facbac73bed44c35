#pragma once

#include "rrfilt/errors.hpp"
#include "rrfilt/types.hpp"

#include <utility>

namespace rrfilt {

/// One filtering step: the scalar estimate x and the error e = d - x.
struct StepOutput {
  Complex x;
  Complex e;
};

/// State of the jointly adapted pair: an M x D projection matrix S feeding a
/// D-tap reduced-rank filter w_bar, each with its own step size.
struct JioState {
  ComplexMatrix S;
  ComplexVector w_bar;
  double mu = 0.0;
  double eta = 0.0;

  Index fullDim() const { return S.rows(); }
  Index rank() const { return S.cols(); }

  /// Canonical start: w_bar = 0 and S = the first D columns of the identity,
  /// so the initial reduced data is a plain truncation of the input.
  static JioState initial(Index m, Index d, double mu, double eta);
};

struct FullRankState {
  ComplexVector w;
  double mu = 0.0;

  static FullRankState initial(Index m, double mu);
};

/// x = w_bar^H S^H r.
Complex jioOutput(const JioState& state, const ComplexVector& r);

/// Conjugate gradient of the instantaneous cost |d - w_bar^H S^H r|^2 with
/// respect to w_bar: -e* S^H r.
ComplexVector gradientW(const JioState& state, const ComplexVector& r,
                        Complex d);

/// Conjugate gradient with respect to S: -e* r w_bar^H.
ComplexMatrix gradientS(const JioState& state, const ComplexVector& r,
                        Complex d);

/// One coupled LMS step. Both updates are evaluated from the pre-update
/// state with the shared error e:
///   w_bar' = w_bar - mu * gradientW,  S' = S - eta * gradientS.
/// Throws DivergenceError (naming step_index) when the new state is not
/// finite; std::invalid_argument on non-finite input.
std::pair<StepOutput, JioState> jioLmsStep(const JioState& state,
                                           const ComplexVector& r, Complex d,
                                           long step_index = -1);

/// Standard LMS: x = w^H r, e = d - x, w' = w + mu e* r.
std::pair<StepOutput, FullRankState> fullrankLmsStep(const FullRankState& state,
                                                     const ComplexVector& r,
                                                     Complex d,
                                                     long step_index = -1);

/// Orthonormal basis of the Krylov subspace {p, R p, ..., R^(D-1) p}. The
/// result may have fewer than D columns when the subspace degenerates.
/// Throws DegenerateBasisError for p = 0.
ComplexMatrix krylovProjection(const ComplexMatrix& R, const ComplexVector& p,
                               Index d);

/// Hard BPSK decision on the real part; Re(x) = 0 maps to +1.
inline double detectBpsk(Complex x) { return x.real() >= 0.0 ? 1.0 : -1.0; }

}  // namespace rrfilt
