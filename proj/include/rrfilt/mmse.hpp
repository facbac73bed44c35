#pragma once

#include "rrfilt/numkernel.hpp"
#include "rrfilt/types.hpp"

#include <vector>

namespace rrfilt {

struct WienerSolution {
  ComplexVector w;
  double mse = 0.0;
};

/// Result of alternating the two conditional MMSE expressions: the projection
/// matrix, the reduced-rank weights, the MSE after each alternation, and
/// whether the |dJ| tolerance was reached before the iteration cap.
struct JointDesign {
  ComplexMatrix S;
  ComplexVector w_bar;
  std::vector<double> mse_trajectory;
  bool converged = false;
};

/// Full-rank Wiener design: w = R^-1 p, mse = sigma_d^2 - p^H R^-1 p.
WienerSolution fullRankMmse(const MomentSet& m);

/// Optimal reduced-rank weights for a fixed projection:
/// w_bar = (S^H R S)^-1 S^H p.
ComplexVector reducedWeights(const ComplexMatrix& S, const MomentSet& m);

/// Optimal projection for fixed weights, in the minimum-norm (pseudo-inverse)
/// sense: S = R^-1 (p w_bar^H) (w_bar w_bar^H)^+ = (R^-1 p) w_bar^H / |w_bar|^2.
/// Only the component of S along w_bar affects the composite filter S w_bar,
/// so this rank-one representative is observationally complete.
/// Throws std::invalid_argument for w_bar = 0.
ComplexMatrix mmseProjection(const MomentSet& m, const ComplexVector& w_bar);

/// MSE of an arbitrary pair:
/// J = sigma_d^2 - 2 Re(w_bar^H S^H p) + w_bar^H S^H R S w_bar.
double evaluateMse(const ComplexMatrix& S, const ComplexVector& w_bar,
                   const MomentSet& m);

/// MMSE attainable within the column span of S:
/// J = sigma_d^2 - p_bar^H R_bar^-1 p_bar.
double projectedMmse(const ComplexMatrix& S, const MomentSet& m);

/// Alternates reducedWeights and mmseProjection from init_S (empty = the
/// first D columns of the identity), recording J after each alternation.
/// Within the complement of w_bar the projection update is undetermined; those
/// directions retain their previous values, which keeps the iteration a
/// well-defined descent map.
JointDesign jointFixedPoint(const MomentSet& m, Index d,
                            const ComplexMatrix& init_S = ComplexMatrix(),
                            double tol = 1e-9, int max_iters = 200);

}  // namespace rrfilt
